import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from horn21.angles import AnglePair, ClassTriple, ParseError, parse_angle, psi

from conftest import random_triple


def test_parse_angle_symbolic():
    assert parse_angle("2pi/3") == Fraction(2, 3)
    assert parse_angle("pi") == Fraction(1)
    assert parse_angle("11pi/6") == Fraction(11, 6)
    assert parse_angle("0") == 0.0


def test_parse_angle_decimal_is_radians():
    assert math.isclose(parse_angle("1.5") * math.pi, 1.5)


@pytest.mark.parametrize("bad", ["", "x", "pi/0", "2/3", "1,2"])
def test_parse_angle_rejects(bad):
    with pytest.raises(ParseError):
        parse_angle(bad)


def test_pair_orders_and_reduces():
    p = AnglePair(Fraction(1, 3), Fraction(5, 3))
    assert (p.a1, p.a2) == (Fraction(5, 3), Fraction(1, 3))
    q = AnglePair(Fraction(7, 3), 0)  # 7pi/3 reduces to pi/3
    assert q.a1 == Fraction(1, 3)


def test_seam_snaps_to_zero():
    p = AnglePair(2.0 - 1e-12, 0.5)
    assert p.a2 == 0.0 and p.a1 == 0.5


def test_triple_parse_roundtrip():
    t = ClassTriple.parse("2pi/3,pi/3;pi,pi/2;11pi/6,0.25")
    assert t.alpha.a1 == Fraction(2, 3)
    assert t.beta.a2 == Fraction(1, 2)
    assert math.isclose(t.gamma.a2 * math.pi, 0.25)


def test_psi_formula():
    t = ClassTriple.symmetric(AnglePair(Fraction(2, 3), Fraction(1, 3)))
    image = psi(t)
    assert image.alpha == AnglePair(Fraction(5, 3), Fraction(4, 3))
    assert image.beta == image.alpha and image.gamma == image.alpha
    fixed = ClassTriple.symmetric(AnglePair(Fraction(1), Fraction(1)))
    assert psi(fixed) == fixed


@given(st.lists(st.floats(min_value=1e-3, max_value=2 - 1e-3), min_size=6, max_size=6))
def test_psi_involution_and_interiority(vals):
    pairs = [AnglePair(*sorted(vals[i : i + 2], reverse=True)) for i in (0, 2, 4)]
    t = ClassTriple(*pairs)
    back = psi(psi(t))
    for p, q in zip(t.pairs, back.pairs):
        assert math.isclose(float(p.a1), float(q.a1), abs_tol=1e-12)
        assert math.isclose(float(p.a2), float(q.a2), abs_tol=1e-12)
    if t.is_interior:
        assert psi(t).is_interior


def test_interior_flag(rng):
    t = random_triple(rng, interior_margin=0.05)
    assert t.is_interior
    assert not ClassTriple.symmetric(AnglePair(1.0, 0.0)).is_interior
    assert not ClassTriple.symmetric(AnglePair(1.0, 1.0)).is_interior
