import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from horn21.angles import AnglePair, ClassTriple
from horn21.isometry import (
    IsometryKind,
    Layer,
    MirrorKind,
    NotElliptic,
    NotScalarProduct,
    NullPolarVector,
    angle_pair,
    classify,
    complex_reflection,
    elliptic_rep,
    layer_product,
    standard_lift,
)
from horn21.linalg import GroupElement, J, NotUnitary
from horn21.oracle import random_u21

from conftest import random_pair


def test_elliptic_rep():
    assert np.allclose(elliptic_rep(AnglePair(0, 0)).matrix, np.eye(3))
    m = elliptic_rep(AnglePair(Fraction(2, 3), Fraction(1, 3))).matrix
    assert np.allclose(
        np.diag(m), [cmath.exp(2j * math.pi / 3), cmath.exp(1j * math.pi / 3), 1]
    )
    m = elliptic_rep(AnglePair(Fraction(1), Fraction(1))).matrix
    assert np.allclose(np.diag(m), [-1, -1, 1])


def test_classify_regular():
    got = classify(elliptic_rep(AnglePair(Fraction(2, 3), Fraction(1, 3))))
    assert got.kind is IsometryKind.REGULAR_ELLIPTIC
    assert got.pair.close_to(AnglePair(Fraction(2, 3), Fraction(1, 3)))


def test_classify_line_reflection():
    got = classify(GroupElement(np.diag([1j, 1, 1])))
    assert got.kind is IsometryKind.SPECIAL_ELLIPTIC
    assert got.mirror is MirrorKind.LINE
    assert got.pair.close_to(AnglePair(Fraction(1, 2), 0))


def test_classify_point_reflection():
    got = classify(GroupElement(np.diag([1j, 1j, 1])))
    assert got.kind is IsometryKind.SPECIAL_ELLIPTIC
    assert got.mirror is MirrorKind.POINT
    assert got.pair.close_to(AnglePair(Fraction(1, 2), Fraction(1, 2)))


def test_classify_loxodromic():
    m = np.eye(3, dtype=complex)
    m[1:, 1:] = [[math.cosh(1), math.sinh(1)], [math.sinh(1), math.cosh(1)]]
    assert classify(GroupElement(m)).kind is IsometryKind.LOXODROMIC


_CAYLEY = np.array(
    [[1, 0, 1], [0, math.sqrt(2), 0], [1, 0, -1]], dtype=complex
) / math.sqrt(2)


def _heisenberg(z: complex, t: float, theta: float = 0.0) -> GroupElement:
    """Cayley transport of a (possibly screw) Heisenberg translation."""
    b = complex(-abs(z) ** 2 / 2, t / 2)
    n = np.array([[1, -z.conjugate(), b], [0, 1, z], [0, 0, 1]], dtype=complex)
    n = n @ np.diag([1, cmath.exp(1j * theta), 1])
    m = _CAYLEY @ n @ np.linalg.inv(_CAYLEY)
    return GroupElement(m)


@pytest.mark.parametrize(
    "z,t,theta",
    [(1 + 0.5j, 0.0, 0.0), (0j, 2.0, 0.0), (0j, 2.0, 0.8)],
    ids=["unipotent-3step", "unipotent-vertical", "screw"],
)
def test_classify_parabolic(z, t, theta):
    g = _heisenberg(z, t, theta).validate()
    assert classify(g).kind is IsometryKind.PARABOLIC


def test_classify_rejects_nonunitary():
    with pytest.raises(NotUnitary):
        classify(GroupElement(2 * np.eye(3)))


def test_angle_pair_round_trip(rng):
    for _ in range(300):
        p = random_pair(rng, interior_margin=1e-3)
        got = angle_pair(elliptic_rep(p))
        assert abs(got.a1 - float(p.a1)) < 1e-9 / math.pi
        assert abs(got.a2 - float(p.a2)) < 1e-9 / math.pi


def test_angle_pair_conjugation_invariance(rng):
    p = AnglePair(Fraction(5, 3), Fraction(1, 2))
    src = elliptic_rep(p).matrix
    for _ in range(100):
        q = random_u21(rng).matrix
        got = angle_pair(GroupElement(q @ src @ np.linalg.inv(q)))
        assert got.close_to(p, tol_rad=1e-8)


def test_angle_pair_special_elliptic_split():
    # repeated eigenvalue owning a mixed 2-space: R(eta) with eta on e1
    got = angle_pair(GroupElement(np.diag([cmath.exp(0.7j), 1, 1])))
    assert got.close_to(AnglePair.from_radians(0.7, 0.0))


def test_angle_pair_rejects_loxodromic():
    m = np.eye(3, dtype=complex)
    m[1:, 1:] = [[math.cosh(1), math.sinh(1)], [math.sinh(1), math.cosh(1)]]
    with pytest.raises(NotElliptic):
        angle_pair(GroupElement(m))


def test_classify_elliptic_conjugates_never_parabolic(rng):
    for _ in range(200):
        p = random_pair(rng, interior_margin=1e-2)
        q = random_u21(rng).matrix
        g = GroupElement(q @ elliptic_rep(p).matrix @ np.linalg.inv(q))
        kind = classify(g).kind
        assert kind in (IsometryKind.REGULAR_ELLIPTIC, IsometryKind.SPECIAL_ELLIPTIC)


def test_standard_lift():
    assert np.allclose(standard_lift(AnglePair(0, 0)).matrix, np.eye(3))
    m = standard_lift(AnglePair(Fraction(2, 3), Fraction(1, 3))).matrix
    assert np.allclose(
        np.diag(m), [cmath.exp(1j * math.pi / 3), 1, cmath.exp(-1j * math.pi / 3)]
    )
    m = standard_lift(AnglePair(Fraction(1), Fraction(1))).matrix
    assert np.allclose(
        np.diag(m),
        [cmath.exp(1j * math.pi / 3), cmath.exp(1j * math.pi / 3), cmath.exp(-2j * math.pi / 3)],
    )
    assert abs(np.linalg.det(m) - 1) < 1e-12


def test_standard_lift_projectively_equals_rep(rng):
    for _ in range(50):
        p = random_pair(rng)
        ratio = standard_lift(p).matrix @ np.linalg.inv(elliptic_rep(p).matrix)
        lam = ratio[0, 0]
        assert np.abs(ratio - lam * np.eye(3)).max() < 1e-12


def test_complex_reflection():
    m = complex_reflection([1, 0, 0], 1j).matrix
    assert np.allclose(m, np.diag([1j, 1, 1]))
    assert np.allclose(complex_reflection([1, 0, 0], 1.0).matrix, np.eye(3))
    with pytest.raises(NullPolarVector):
        complex_reflection([1, 0, 1], 1j)


def test_complex_reflection_action(rng):
    for _ in range(50):
        c = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        from horn21.linalg import hermitian_pairing

        if abs(hermitian_pairing(c, c)) < 0.1:
            continue
        eta = cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        r = complex_reflection(c, eta)
        assert np.abs(r.matrix @ c - eta * c).max() < 1e-9 * np.abs(c).max()
        # fixes the c-orthogonal hyperplane pointwise
        w = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        from horn21.linalg import hermitian_pairing as pairing

        w = w - (pairing(w, c) / pairing(c, c)) * np.asarray(c)
        assert np.abs(r.matrix @ w - w).max() < 1e-9 * max(1.0, np.abs(w).max())


def test_layer_product_identity():
    ident = GroupElement(np.eye(3))
    assert layer_product(ident, ident, ident) is Layer.ONE


def test_layer_product_wall_case():
    a = elliptic_rep(AnglePair(Fraction(2, 3), Fraction(1, 3)))
    c = GroupElement(np.linalg.inv(a.matrix @ a.matrix))
    assert layer_product(a, a, c) is Layer.OMEGA


def test_layer_product_rejects_nonscalar():
    a = elliptic_rep(AnglePair(Fraction(2, 3), Fraction(1, 3)))
    b = elliptic_rep(AnglePair(Fraction(1, 2), Fraction(1, 4)))
    with pytest.raises(NotScalarProduct):
        layer_product(a, b, a)
