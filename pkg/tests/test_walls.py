import math
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from horn21.angles import AnglePair, ClassTriple, psi
from horn21.isometry import Layer
from horn21.walls import (
    IJK,
    bar,
    active_walls,
    facet_of,
    linear_forms,
    offset_triple,
    sample_wall_points,
    wall_catalog,
    wall_interior_point,
)

from conftest import random_triple


def sym(a, b):
    return ClassTriple.symmetric(AnglePair(Fraction(*a), Fraction(*b)))


INTERSECTION_POINT = ClassTriple(
    AnglePair(Fraction(3, 4), Fraction(1, 2)),
    AnglePair(Fraction(2, 3), Fraction(1, 3)),
    AnglePair(Fraction(2, 3), Fraction(1, 3)),
)


def test_linear_forms_center():
    f = linear_forms(sym((1, 1), (1, 1)))
    assert f.S == 6
    assert all(v == 3 for v in f.sigma_map.values())
    assert all(v == 3 for v in f.H_map.values())


def test_linear_forms_intersection_point():
    f = linear_forms(INTERSECTION_POINT)
    assert f.H(1, 1, 2) == 2 and f.sigma(2, 2, 1) == Fraction(3, 2)
    assert f.H(1, 2, 1) == 2 and f.sigma(2, 1, 2) == Fraction(3, 2)


def test_linear_forms_zero():
    f = linear_forms(sym((0, 1), (0, 1)))
    assert f.S == 0
    assert all(v == 0 for v in f.sigma_map.values())


def test_form_identities_exact(rng):
    for _ in range(2000):
        k = rng.integers(0, 96, 6)
        t = ClassTriple(
            AnglePair(Fraction(int(k[0]), 48), Fraction(int(k[1]), 48)),
            AnglePair(Fraction(int(k[2]), 48), Fraction(int(k[3]), 48)),
            AnglePair(Fraction(int(k[4]), 48), Fraction(int(k[5]), 48)),
        )
        f = linear_forms(t)
        for ijk in IJK:
            assert f.sigma(*ijk) + f.sigma(*bar(ijk)) == f.S
            assert f.H(*ijk) + f.H(*bar(ijk)) == f.S


def test_psi_covariance_exact(rng):
    for _ in range(500):
        k = rng.integers(1, 95, 6)
        t = ClassTriple(
            AnglePair(Fraction(int(k[0]), 48), Fraction(int(k[1]), 48)),
            AnglePair(Fraction(int(k[2]), 48), Fraction(int(k[3]), 48)),
            AnglePair(Fraction(int(k[4]), 48), Fraction(int(k[5]), 48)),
        )
        f = linear_forms(t)
        g = linear_forms(psi(t))
        assert g.S == 12 - f.S
        for i, j, kk in IJK:
            rev = bar((kk, j, i))
            assert g.H(i, j, kk) == 6 - f.H(*rev)
            assert g.sigma(i, j, kk) == 6 - f.sigma(*rev)


def test_monotonicity_interior(rng):
    for _ in range(500):
        t = random_triple(rng, interior_margin=1e-3)
        f = linear_forms(t)
        for j in (1, 2):
            for k in (1, 2):
                assert f.H(2, j, k) < f.H(1, j, k)
                assert f.H(j, 2, k) < f.H(j, 1, k)
                assert f.H(j, k, 2) < f.H(j, k, 1)


def test_catalog_counts():
    cat = wall_catalog()
    assert len(cat) == 27
    assert sum(w.kind == "spherical" for w in cat) == 3
    assert sum(w.kind == "hyperbolic" for w in cat) == 24
    assert Counter(w.layer for w in cat) == {
        Layer.OMEGA: 9,
        Layer.ONE: 9,
        Layer.OMEGA2: 9,
    }
    assert sum(w.interior for w in cat) == 13


def test_catalog_truncations_follow_levels():
    for w in wall_catalog():
        if w.kind == "spherical":
            assert w.level in (4, 6, 8) and len(w.truncations) == 4
        else:
            assert w.level in (-4, 0, 2, 4, 6, 10)
            if w.level in (-4, 10):
                assert not w.truncations
            elif w.level in (0, 4):
                (tr,) = w.truncations
                assert tr.op == ">=" and tr.bound == 4 and tr.ijk == bar(w.ijk)
            else:
                (tr,) = w.truncations
                assert tr.op == "<=" and tr.bound == 2 and tr.ijk == bar(w.ijk)


def test_psi_permutes_catalog():
    cat = wall_catalog()
    spherical = {w.level: w for w in cat if w.kind == "spherical"}
    hyper = {(w.ijk, w.level): w for w in cat if w.kind == "hyperbolic"}
    for w in cat:
        if w.kind == "spherical":
            image = spherical[12 - w.level]
        else:
            i, j, k = w.ijk
            image = hyper[(bar((k, j, i)), 6 - w.level)]
        assert image.layer is w.layer.mirror
        assert image.interior == w.interior


def test_active_walls_intersection_point():
    hits = active_walls(INTERSECTION_POINT, 1e-9)
    assert {w.name for w, _ in hits} == {"H_112=2pi", "H_121=2pi"}
    assert all(abs(d) < 1e-12 for _, d in hits)


def test_active_walls_sigma6():
    hits = active_walls(sym((3, 2), (1, 2)), 1e-9)
    assert {w.name for w, _ in hits} == {"Sigma_6pi"}


def test_active_walls_truncation_excludes():
    assert active_walls(sym((1, 1), (1, 1)), 1e-9) == []


def test_facet_types():
    assert facet_of((1, 2, 2), 1, 1).facet_type == 1
    assert facet_of((2, 1, 2), 1, 1).facet_type == 1
    assert facet_of((2, 2, 1), 1, 1).facet_type == 1
    assert facet_of((2, 1, 1), 2, 2).facet_type == 2
    assert facet_of((1, 2, 1), 2, 2).facet_type == 2
    assert facet_of((1, 1, 2), 2, 2).facet_type == 2
    assert facet_of((1, 1, 1), 3, 0).facet_type == 3
    assert facet_of((2, 1, 1), 3, 0).facet_type == 4
    assert facet_of((1, 2, 1), 3, 0).facet_type == 4
    assert facet_of((1, 1, 2), 3, 0).facet_type == 4
    assert facet_of((1, 1, 1), 1, 1).facet_type is None
    assert facet_of((2, 2, 2), 3, 0).facet_type is None


def test_facet_defining_walls():
    f = facet_of((1, 1, 1), 3, 0)
    names = [w.name for w in f.walls]
    assert names == ["Sigma_6pi", "H_111=6pi", "H_222=0pi"]
    assert all(w.in_catalog for w in f.walls)


def test_facet_point_lies_on_exactly_its_walls():
    # a point of the type-1 facet T_122(1,1): sigma_122 = sigma_211 = 2pi
    t = ClassTriple(
        AnglePair(Fraction(9, 10), Fraction(1, 2)),
        AnglePair(Fraction(8, 10), Fraction(6, 10)),
        AnglePair(Fraction(7, 10), Fraction(5, 10)),
    )
    f = linear_forms(t)
    assert f.sigma(1, 2, 2) == 2 and f.sigma(2, 1, 1) == 2
    names = {w.name for w, _ in active_walls(t, 1e-9)}
    assert names == {"Sigma_4pi", "H_122=2pi", "H_211=2pi"}


def test_wall_interior_points_valid():
    for w in wall_catalog():
        t = wall_interior_point(w)
        f = linear_forms(t)
        assert abs(float(w.equality_residual(f))) < 1e-9
        assert all(tr.holds(f) for tr in w.truncations)
        assert t.is_interior


def test_wall_sampling_and_offsets(rng):
    w = wall_catalog()[0]
    pts = sample_wall_points(w, 10, rng)
    for p in pts:
        assert any(hit.name == w.name for hit, _ in active_walls(p, 1e-9))
        q = offset_triple(p, w, 1e-3)
        assert all(hit.name != w.name for hit, _ in active_walls(q, 1e-9))
