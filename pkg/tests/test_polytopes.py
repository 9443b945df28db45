from collections import Counter
from fractions import Fraction

import pytest

from horn21.angles import AnglePair, ClassTriple, psi
from horn21.isometry import Layer
from horn21.polytopes import (
    CellId,
    NotInterior,
    OnWall,
    PolytopeId,
    cell_id,
    cell_record,
    cell_table,
    polytope_member,
    polytope_strict,
    psi_consistency,
    surjective_pair,
)
from horn21.walls import active_walls, linear_forms

from conftest import random_triple


def sym(a, b):
    return ClassTriple.symmetric(AnglePair(Fraction(*a), Fraction(*b)))


def test_member_p6():
    rep = polytope_member(sym((7, 4), (3, 4)))
    assert rep.member
    assert rep.layers == frozenset({Layer.ONE})
    assert rep.polytopes == (PolytopeId.P6,)
    assert rep.cell_per_layer[Layer.ONE] == CellId(Layer.ONE, "C_6pi^{+}")


def test_member_nonmember():
    rep = polytope_member(sym((1, 4), (1, 16)))
    assert not rep.member
    assert rep.polytopes == ()
    assert rep.cell_per_layer[Layer.OMEGA] == CellId(Layer.OMEGA, "C_4pi^{c,2}")


def test_member_on_interior_wall():
    rep = polytope_member(sym((3, 2), (1, 2)))
    assert rep.member
    assert PolytopeId.P6 in rep.polytopes
    cell = rep.cell_per_layer[Layer.ONE]
    assert isinstance(cell, OnWall)
    assert [w.name for w in cell.walls] == ["Sigma_6pi"]


def test_boundary_caveat():
    rep = polytope_member(ClassTriple.symmetric(AnglePair(1.0, 1.0)))
    assert rep.boundary_caveat and not rep.interior
    assert rep.cell_per_layer == {}


def test_cell_on_two_walls():
    t = ClassTriple(
        AnglePair(Fraction(3, 4), Fraction(1, 2)),
        AnglePair(Fraction(2, 3), Fraction(1, 3)),
        AnglePair(Fraction(2, 3), Fraction(1, 3)),
    )
    cell = cell_id(t, Layer.OMEGA)
    assert isinstance(cell, OnWall)
    assert {w.name for w in cell.walls} == {"H_112=2pi", "H_121=2pi"}


def test_cell_id_needs_interior():
    with pytest.raises(NotInterior):
        cell_id(ClassTriple.symmetric(AnglePair(1.0, 0.0)), Layer.ONE)


def test_cell_table_counts():
    table = cell_table()
    assert len(table) == 28
    assert sum(rec.full for rec in table) == 23
    by_layer = Counter(rec.id.layer for rec in table)
    assert by_layer == {Layer.OMEGA: 11, Layer.ONE: 6, Layer.OMEGA2: 11}
    empty = {rec.id.name for rec in table if not rec.full}
    assert empty == {
        "C_4pi^{c,1}",
        "C_4pi^{c,2}",
        "C_6pi^{c}",
        "C_8pi^{c,1}",
        "C_8pi^{c,2}",
    }


def test_cells_tile_each_layer(rng):
    names = {rec.id for rec in cell_table()}
    for _ in range(500):
        t = random_triple(rng, interior_margin=1e-3)
        for layer in Layer:
            cell = cell_id(t, layer)
            if isinstance(cell, OnWall):
                continue
            assert cell in names
            assert cell.layer is layer


def test_membership_matches_full_cells(rng):
    # off the walls, the triple is in the layer's solution set iff its cell
    # is full: the two routes to the answer must agree
    for _ in range(500):
        t = random_triple(rng, interior_margin=1e-3)
        if active_walls(t, 1e-7):
            continue
        rep = polytope_member(t)
        for layer in Layer:
            cell = rep.cell_per_layer[layer]
            if isinstance(cell, OnWall):
                continue
            assert cell_record(cell).full == (layer in rep.layers)


def test_surjective_pair_examples():
    wide = AnglePair(2.0 - 0.01 / 3.141592653589793, 0)
    assert surjective_pair(wide, wide)
    assert not surjective_pair(
        AnglePair(Fraction(5, 4), Fraction(1, 2)), AnglePair(Fraction(11, 6), Fraction(1, 2))
    )
    assert not surjective_pair(AnglePair(0, 0), AnglePair(0, 0))


def test_surjective_pair_implies_p6(rng):
    alpha = beta = AnglePair(Fraction(39, 20), Fraction(1, 20))
    assert surjective_pair(alpha, beta)
    for g1 in range(1, 20):
        for g2 in range(1, g1 + 1):
            gamma = AnglePair(Fraction(g1, 10), Fraction(g2, 10))
            rep = polytope_member(ClassTriple(alpha, beta, gamma))
            assert rep.member


def test_psi_consistency_examples():
    assert psi_consistency(sym((7, 4), (3, 4)))
    assert psi_consistency(ClassTriple.symmetric(AnglePair(Fraction(1), Fraction(1, 2))))


def test_psi_consistency_random(rng):
    for _ in range(1000):
        t = random_triple(rng, interior_margin=1e-3)
        assert psi_consistency(t)


def test_diagonal_never_strictly_inside(rng):
    # on the diagonal (equal angle pairs) all H coincide, so every strict
    # polytope system is contradictory there
    for _ in range(500):
        x, y, z = rng.uniform(0, 2, 3)
        t = ClassTriple(AnglePair(x, x), AnglePair(y, y), AnglePair(z, z))
        forms = linear_forms(t)
        for pid in PolytopeId:
            assert not polytope_strict(forms, pid)
