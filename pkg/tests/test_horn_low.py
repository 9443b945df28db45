import math
from fractions import Fraction

import numpy as np
import pytest

from horn21.angles import AnglePair
from horn21.horn_low import (
    DegenerateAngle,
    NoSolution,
    disk_rotation,
    pu11_construct,
    pu11_member,
    rotation_angle,
    u2_construct,
    u2_member,
)


def pairs(*vals):
    return tuple(AnglePair(Fraction(a), Fraction(b)) for a, b in vals)


def test_u2_member_examples():
    assert u2_member(pairs((0, 0), (0, 0), (0, 0))) == (True, "C_0")
    assert u2_member(pairs((1, 0), (1, 0), (0, 0))) == (True, "C_2pi")
    t = (
        AnglePair(Fraction(1, 2), Fraction(1, 2)),
        AnglePair(Fraction(1, 2), Fraction(1, 2)),
        AnglePair(Fraction(1), Fraction(1)),
    )
    assert u2_member(t) == (True, "C_4pi")


def test_u2_member_s_pins_component():
    # S = 3pi is not a multiple of 2pi: det(ABC) = e^{iS} != 1, no solution
    t = (
        AnglePair(Fraction(1, 2), 0),
        AnglePair(Fraction(1, 2), 0),
        AnglePair(Fraction(3, 2), Fraction(1, 2)),
    )
    assert u2_member(t) == (False, None)


def test_u2_construct_trivial():
    a, b, c = u2_construct(pairs((0, 0), (0, 0), (0, 0)))
    for m in (a, b, c):
        assert np.allclose(m, np.eye(2))


def test_u2_construct_c2pi():
    a, b, c = u2_construct(pairs((1, 0), (1, 0), (0, 0)))
    assert np.allclose(a, np.diag([-1, 1]))
    assert np.allclose(a @ b @ c, np.eye(2))


def test_u2_construct_endpoint_case():
    t = (
        AnglePair(Fraction(1, 2), 0),
        AnglePair(Fraction(1, 2), 0),
        AnglePair(Fraction(3, 2), Fraction(3, 2)),
    )
    assert u2_member(t) == (True, "C_4pi")
    a, b, c = u2_construct(t)
    assert np.abs(a @ b @ c - np.eye(2)).max() < 1e-9


def test_u2_construct_rejects_nonmember():
    with pytest.raises(NoSolution):
        u2_construct(pairs((1, 0), (0, 0), (0, 0)))


def _random_u2_member(rng):
    """A uniformly sampled solvable U(2) triple: fix five angles, snap the
    sixth so S is a multiple of 2pi, keep chamber order, test membership."""
    while True:
        v = rng.uniform(0, 2, 5)
        k = rng.integers(0, 5)
        last = 2 * k - v.sum()
        if not 0 <= last < 2:
            continue
        a = AnglePair(v[0], v[1])
        b = AnglePair(v[2], v[3])
        g = AnglePair(v[4], last)
        member, _ = u2_member((a, b, g), tol=1e-9)
        if member:
            return a, b, g


def test_u2_construct_random_members(rng):
    for _ in range(100):
        t = _random_u2_member(rng)
        a, b, c = u2_construct(t, tol=1e-9)
        assert np.abs(a @ b @ c - np.eye(2)).max() <= 1e-9
        got = sorted(np.mod(np.angle(np.linalg.eigvals(c)), 2 * math.pi), reverse=True)
        want = (t[2].a1_rad, t[2].a2_rad)
        for g, w in zip(got, sorted(want, reverse=True)):
            d = abs(g - w) % (2 * math.pi)
            assert min(d, 2 * math.pi - d) <= 1e-8


def test_u2_member_inverse_symmetry(rng):
    for _ in range(2000):
        vals = rng.uniform(0, 2, 6)
        t = tuple(AnglePair(vals[i], vals[i + 1]) for i in (0, 2, 4))
        flipped = tuple(
            AnglePair(2 - p.a2, 2 - p.a1) for p in reversed(t)
        )
        assert u2_member(t)[0] == u2_member(flipped)[0]
    # and on the solvable generator, where membership is actually true
    for _ in range(50):
        t = _random_u2_member(rng)
        flipped = tuple(AnglePair(2 - p.a2, 2 - p.a1) for p in reversed(t))
        assert u2_member(flipped)[0]


def test_pu11_member():
    assert pu11_member((0.5, 0.5, 0.5)) == (True, -1)
    assert pu11_member((1, 1, 1)) == (False, None)
    assert pu11_member((1.5, 1.5, 1.5)) == (True, +1)


def test_pu11_member_permutation_invariant(rng):
    for _ in range(200):
        angles = tuple(rng.uniform(0, 2, 3))
        member, layer = pu11_member(angles)
        perm = tuple(angles[i] for i in rng.permutation(3))
        assert pu11_member(perm) == (member, layer)


def _scalar_error(m):
    lam = np.trace(m) / 2
    return np.abs(m - lam * np.eye(2)).max()


def test_pu11_construct_triangle():
    x, y, z = pu11_construct((0.5, 0.5, 0.5))
    assert _scalar_error(x @ y @ z) < 1e-9
    for m, want in zip((x, y, z), (0.5, 0.5, 0.5)):
        assert abs(rotation_angle(m) / math.pi - want) < 1e-8


def test_pu11_construct_common_point():
    x, y, z = pu11_construct((Fraction(2, 3),) * 3)
    prod = x @ y @ z
    assert np.abs(prod + np.eye(2)).max() < 1e-12  # e^{i pi} Id


def test_pu11_construct_gap_and_degenerate():
    with pytest.raises(NoSolution):
        pu11_construct((1.0, 1.0, 1.0))
    with pytest.raises(DegenerateAngle):
        pu11_construct((0.0, 0.5, 0.5))


def test_pu11_construct_random(rng):
    count = 0
    while count < 100:
        angles = tuple(rng.uniform(0.02, 2, 3))
        s = sum(angles)
        if not (s < 2 - 0.05 / math.pi or s > 4 + 0.05 / math.pi):
            continue
        count += 1
        x, y, z = pu11_construct(angles)
        assert _scalar_error(x @ y @ z) <= 1e-9
        for m, want in zip((x, y, z), angles):
            d = abs(rotation_angle(m) - want * math.pi) % (2 * math.pi)
            assert min(d, 2 * math.pi - d) <= 1e-8


def test_disk_rotation_preserves_form():
    j11 = np.diag([1.0, -1.0])
    m = disk_rotation(0.3 + 0.4j, 1.1)
    assert np.abs(m.conj().T @ j11 @ m - j11).max() < 1e-12
