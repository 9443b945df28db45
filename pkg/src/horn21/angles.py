"""Angle pairs and class triples: the coordinates of elliptic conjugacy classes.

Angles are stored internally in *units of pi* so that the wall and polytope
arithmetic can be exact: a symbolic input such as ``"2pi/3"`` becomes the
`Fraction` 2/3, while numeric input degrades gracefully to `float`.  Mixed
arithmetic works because Python promotes ``Fraction op float`` to `float`.
All public JSON / CLI surfaces speak radians.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

# Angles live in [0, 2) in units of pi.  Values this close to 2 are wrapped
# to 0 before ordering: the chamber identifies (alpha, 0) with (2pi, alpha)
# at the seam, and we canonicalize to the a2-minimal form.
SEAM_TOL = 1e-9 / math.pi

_ANGLE_RE = re.compile(
    r"""^\s*
    (?P<num>\d+(?:\.\d*)?)?      # optional numeric prefix
    \s*(?P<pi>pi)?               # optional 'pi'
    \s*(?:/\s*(?P<den>\d+(?:\.\d*)?))?   # optional denominator
    \s*$""",
    re.VERBOSE | re.IGNORECASE,
)


class ParseError(ValueError):
    """Raised on malformed angle text; carries the offending position."""

    def __init__(self, text, position, message):
        super().__init__(f"{message} (at position {position} in {text!r})")
        self.text = text
        self.position = position


def parse_angle(text: str) -> Real:
    """Parse an angle to units of pi.

    Accepts decimals (radians, e.g. ``"1.25"``) and rational multiples of
    pi (``"2pi/3"``, ``"pi"``, ``"11pi/6"``).  Symbolic input returns an
    exact `Fraction` in units of pi; decimal input returns a `float`.
    """
    m = _ANGLE_RE.match(text)
    if not m or (m.group("num") is None and m.group("pi") is None):
        raise ParseError(text, _first_bad_position(text), "not an angle")
    num, pi, den = m.group("num"), m.group("pi"), m.group("den")
    if pi is None:
        if den is not None:
            raise ParseError(text, text.index("/"), "denominator without pi")
        return float(num) / math.pi
    numerator = Fraction(num) if num is not None else Fraction(1)
    denominator = Fraction(den) if den is not None else Fraction(1)
    if denominator == 0:
        raise ParseError(text, text.index("/"), "zero denominator")
    return numerator / denominator


def _first_bad_position(text: str) -> int:
    for i, ch in enumerate(text):
        if not (ch.isdigit() or ch in ". /pPiI"):
            return i
    return len(text)


def reduce_turns(value: Real) -> Real:
    """Reduce an angle (units of pi) into [0, 2), snapping the 2pi seam to 0."""
    value = value % 2
    if isinstance(value, float) and (value >= 2 - SEAM_TOL or value <= SEAM_TOL):
        return 0.0
    if value == 2:
        return value - 2
    return value


def to_radians(value: Real) -> float:
    return float(value) * math.pi


def from_radians(rad: float) -> float:
    return rad / math.pi


@dataclass(frozen=True)
class AnglePair:
    """Ordered angle pair (a1 >= a2) of an elliptic class, in units of pi.

    The pair (alpha_1, alpha_2) of positive-type eigenvalue arguments after
    the negative-type eigenvalue is normalized to 1; the coordinates of a
    point of the chamber T(G).  Use `.a1_rad` / `.a2_rad` for radians.
    """

    a1: Real
    a2: Real

    def __post_init__(self):
        u1, u2 = reduce_turns(self.a1), reduce_turns(self.a2)
        if u1 < u2:
            u1, u2 = u2, u1
        object.__setattr__(self, "a1", u1)
        object.__setattr__(self, "a2", u2)

    @staticmethod
    def from_radians(a1: float, a2: float) -> "AnglePair":
        return AnglePair(from_radians(a1), from_radians(a2))

    @property
    def a1_rad(self) -> float:
        return to_radians(self.a1)

    @property
    def a2_rad(self) -> float:
        return to_radians(self.a2)

    @property
    def is_exact(self) -> bool:
        return isinstance(self.a1, Fraction) and isinstance(self.a2, Fraction)

    @property
    def is_interior(self) -> bool:
        """Strictly inside the chamber: 0 < a2 < a1 < 2pi."""
        return 0 < self.a2 < self.a1 < 2

    def close_to(self, other: "AnglePair", tol_rad: float = 1e-9) -> bool:
        tol = tol_rad / math.pi
        return (
            _circular_diff(self.a1, other.a1) <= tol
            and _circular_diff(self.a2, other.a2) <= tol
        )

    def to_json(self) -> dict:
        return {"a1": self.a1_rad, "a2": self.a2_rad}

    def __str__(self):
        return f"({_fmt(self.a1)}, {_fmt(self.a2)})"


def _circular_diff(x: Real, y: Real) -> float:
    d = abs(float(x) - float(y)) % 2.0
    return min(d, 2.0 - d)


def _fmt(v: Real) -> str:
    if isinstance(v, Fraction):
        if v == 0:
            return "0"
        if v.denominator == 1:
            return f"{v.numerator}pi"
        return f"{v.numerator}pi/{v.denominator}"
    return f"{to_radians(v):.6g}"


@dataclass(frozen=True)
class ClassTriple:
    """A point of T(G)^3: the three angle pairs of a class triple."""

    alpha: AnglePair
    beta: AnglePair
    gamma: AnglePair

    @property
    def pairs(self) -> tuple[AnglePair, AnglePair, AnglePair]:
        return (self.alpha, self.beta, self.gamma)

    @property
    def is_interior(self) -> bool:
        return all(p.is_interior for p in self.pairs)

    @property
    def is_exact(self) -> bool:
        return all(p.is_exact for p in self.pairs)

    @staticmethod
    def symmetric(pair: AnglePair) -> "ClassTriple":
        return ClassTriple(pair, pair, pair)

    @staticmethod
    def parse(text: str) -> "ClassTriple":
        """Parse ``"a1,a2;b1,b2;c1,c2"`` with each angle in `parse_angle` syntax."""
        parts = text.split(";")
        if len(parts) != 3:
            raise ParseError(text, len(text), "expected three ';'-separated pairs")
        pairs = []
        for part in parts:
            comps = part.split(",")
            if len(comps) != 2:
                raise ParseError(text, text.index(part), "expected 'a1,a2'")
            pairs.append(AnglePair(parse_angle(comps[0]), parse_angle(comps[1])))
        return ClassTriple(*pairs)

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha.to_json(),
            "beta": self.beta.to_json(),
            "gamma": self.gamma.to_json(),
        }

    def __str__(self):
        return f"[{self.alpha}; {self.beta}; {self.gamma}]"


def psi(t: ClassTriple) -> ClassTriple:
    """The involution induced by ABC = Id <=> C^-1 B^-1 A^-1 = Id.

    Sends ((a1,a2),(b1,b2),(g1,g2)) to
    ((2pi-g2, 2pi-g1), (2pi-b2, 2pi-b1), (2pi-a2, 2pi-a1)); it preserves the
    solution set globally and swaps the two outer polytope families.
    """
    def flip(p: AnglePair) -> AnglePair:
        return AnglePair(2 - p.a2, 2 - p.a1)

    return ClassTriple(flip(t.gamma), flip(t.beta), flip(t.alpha))
