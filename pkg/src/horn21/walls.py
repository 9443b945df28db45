"""Linear forms and the catalog of 27 reducible walls.

All levels and bounds are integers in units of pi, so that wall equalities
like H_112 = 2pi are exact on symbolic (Fraction) inputs.  The linear forms
are

    S       = a1 + a2 + b1 + b2 + g1 + g2,
    sigma_ijk = a_i + b_j + g_k,
    H_ijk   = 2 sigma_ijk - sigma_(bar i, bar j, bar k) = 3 sigma_ijk - S.

The catalog: three spherical walls Sigma_{4pi}, Sigma_{6pi}, Sigma_{8pi}
(common fixed point, a U(2) block) and twenty-four truncated hyperplanes
{H_ijk = level, sigma_bar <= 2pi or >= 4pi} (common stable complex line, a
U(1) x U(1,1) block), nine per layer.
"""

from __future__ import annotations

import math
import numpy as np
from dataclasses import dataclass
from numbers import Real

from horn21.angles import ClassTriple
from horn21.isometry import Layer

IJK = (
    (1, 1, 1),
    (1, 1, 2),
    (1, 2, 1),
    (1, 2, 2),
    (2, 1, 1),
    (2, 1, 2),
    (2, 2, 1),
    (2, 2, 2),
)


def bar(ijk):
    return tuple(3 - x for x in ijk)


@dataclass(frozen=True)
class LinearFormValues:
    """All 17 linear-form values at a class triple, in units of pi."""

    S: Real
    _sigma: tuple
    _H: tuple

    def sigma(self, i: int, j: int, k: int) -> Real:
        return self._sigma[_INDEX[(i, j, k)]]

    def H(self, i: int, j: int, k: int) -> Real:
        return self._H[_INDEX[(i, j, k)]]

    @property
    def sigma_map(self) -> dict:
        return dict(zip(IJK, self._sigma))

    @property
    def H_map(self) -> dict:
        return dict(zip(IJK, self._H))


_INDEX = {ijk: n for n, ijk in enumerate(IJK)}


def linear_forms(t: ClassTriple) -> LinearFormValues:
    """Evaluate S, all sigma_ijk and all H_ijk at a class triple.

    Exact over the six input angles: Fraction inputs give Fraction values.
    """
    a = (None, t.alpha.a1, t.alpha.a2)
    b = (None, t.beta.a1, t.beta.a2)
    g = (None, t.gamma.a1, t.gamma.a2)
    s = a[1] + a[2] + b[1] + b[2] + g[1] + g[2]
    ab = {(i, j): a[i] + b[j] for i in (1, 2) for j in (1, 2)}
    sigma = tuple(ab[(i, j)] + g[k] for (i, j, k) in IJK)
    h = tuple(3 * x - s for x in sigma)
    return LinearFormValues(s, sigma, h)


@dataclass(frozen=True)
class Truncation:
    """A closed inequality sigma_ijk <= bound or >= bound (units of pi)."""

    ijk: tuple
    op: str           # "<=" or ">="
    bound: int

    def holds(self, forms: LinearFormValues, slack: float = 0.0) -> bool:
        v = float(forms.sigma(*self.ijk))
        if self.op == "<=":
            return v <= self.bound + slack
        return v >= self.bound - slack

    def __str__(self):
        return f"sigma_{''.join(map(str, self.ijk))} {self.op} {self.bound}pi"

    def to_json(self) -> dict:
        return {"sigma_ijk": list(self.ijk), "op": self.op, "bound_over_pi": self.bound}


@dataclass(frozen=True)
class Wall:
    """One reducible wall: a truncated hyperplane {form = level} in T(G)^3.

    kind "spherical" walls fix S; "hyperbolic" walls fix one H_ijk.  The
    `interior` flag records whether the wall lies inside its polytope or on
    its boundary.  `in_catalog` is False only for auxiliary hyperplanes
    synthesized by `facet_of` for combinations outside the catalog.
    """

    kind: str                  # "spherical" | "hyperbolic"
    ijk: tuple | None          # None for spherical walls
    level: int                 # units of pi
    truncations: tuple         # tuple of Truncation
    layer: Layer
    interior: bool
    in_catalog: bool = True

    @property
    def name(self) -> str:
        if self.kind == "spherical":
            return f"Sigma_{self.level}pi"
        return f"H_{''.join(map(str, self.ijk))}={self.level}pi"

    def equality_residual(self, forms: LinearFormValues) -> Real:
        """Signed residual (form - level), units of pi; exact on Fractions."""
        if self.kind == "spherical":
            return forms.S - self.level
        return forms.H(*self.ijk) - self.level

    def is_active(self, forms: LinearFormValues, tol_rad: float) -> bool:
        slack = tol_rad / math.pi
        if abs(float(self.equality_residual(forms))) > slack:
            return False
        return all(tr.holds(forms, slack) for tr in self.truncations)

    def gradient(self) -> tuple:
        """Coefficients on (a1, a2, b1, b2, g1, g2) of the equality form."""
        if self.kind == "spherical":
            return (1, 1, 1, 1, 1, 1)
        grad = [0] * 6
        i, j, k = self.ijk
        for slot, idx in ((0, i), (2, j), (4, k)):
            grad[slot + idx - 1] += 2
        for slot, idx in ((0, i), (2, j), (4, k)):
            grad[slot + (2 - idx)] -= 1
        return tuple(grad)

    def __str__(self):
        parts = [self.name] + [str(t) for t in self.truncations]
        return "{" + ", ".join(parts) + "}"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "ijk": list(self.ijk) if self.ijk else None,
            "level_over_pi": self.level,
            "truncation": [t.to_json() for t in self.truncations],
            "layer": self.layer.value,
            "interior": self.interior,
        }


def _spherical(level: int, conds, layer: Layer, interior: bool) -> Wall:
    truncs = tuple(Truncation(ijk, "<=", bound) for ijk, bound in conds)
    return Wall("spherical", None, level, truncs, layer, interior)


def _hyperbolic(ijk, level: int, layer: Layer, interior: bool, side: str | None) -> Wall:
    truncs = ()
    if side == "le2":
        truncs = (Truncation(bar(ijk), "<=", 2),)
    elif side == "ge4":
        truncs = (Truncation(bar(ijk), ">=", 4),)
    return Wall("hyperbolic", tuple(ijk), level, truncs, layer, interior)


def _build_catalog() -> tuple:
    walls = [
        _spherical(4, [((1, 1, 1), 4), ((1, 2, 2), 2), ((2, 1, 2), 2), ((2, 2, 1), 2)],
                   Layer.OMEGA, interior=False),
        _spherical(6, [((2, 2, 2), 2), ((1, 1, 2), 4), ((1, 2, 1), 4), ((2, 1, 1), 4)],
                   Layer.ONE, interior=True),
        _spherical(8, [((1, 1, 1), 6), ((1, 2, 2), 4), ((2, 1, 2), 4), ((2, 2, 1), 4)],
                   Layer.OMEGA2, interior=False),
        # layer omega: H = -4pi and the seven H = 2pi walls
        _hyperbolic((2, 2, 2), -4, Layer.OMEGA, interior=False, side=None),
    ]
    interior_2pi = {(2, 1, 1), (1, 2, 1), (1, 1, 2)}
    for ijk in IJK:
        if ijk == (2, 2, 2):
            continue
        walls.append(
            _hyperbolic(ijk, 2, Layer.OMEGA, interior=ijk in interior_2pi, side="le2")
        )
    # layer one: four H = 0 and four H = 6pi walls
    interior_0 = {(2, 2, 1), (2, 1, 2), (1, 2, 2)}
    for ijk in ((2, 2, 2), (2, 2, 1), (2, 1, 2), (1, 2, 2)):
        walls.append(
            _hyperbolic(ijk, 0, Layer.ONE, interior=ijk in interior_0, side="ge4")
        )
    interior_6pi = {(1, 1, 2), (1, 2, 1), (2, 1, 1)}
    for ijk in ((1, 1, 1), (1, 1, 2), (1, 2, 1), (2, 1, 1)):
        walls.append(
            _hyperbolic(ijk, 6, Layer.ONE, interior=ijk in interior_6pi, side="le2")
        )
    # layer omega^2: the seven H = 4pi walls and H = 10pi
    interior_4pi = {(1, 2, 2), (2, 1, 2), (2, 2, 1)}
    for ijk in IJK:
        if ijk == (1, 1, 1):
            continue
        walls.append(
            _hyperbolic(ijk, 4, Layer.OMEGA2, interior=ijk in interior_4pi, side="ge4")
        )
    walls.append(_hyperbolic((1, 1, 1), 10, Layer.OMEGA2, interior=False, side=None))
    return tuple(walls)


_CATALOG = _build_catalog()


def wall_catalog() -> tuple:
    """The fixed list of 27 reducible walls (3 spherical + 24 hyperbolic)."""
    return _CATALOG


def active_walls(t: ClassTriple, tol: float = 1e-9) -> list:
    """Walls whose equality holds within tol (radians) and whose truncation
    inequalities hold within tol.  Returns (wall, signed distance in radians)."""
    forms = linear_forms(t)
    out = []
    for wall in _CATALOG:
        if wall.is_active(forms, tol):
            out.append((wall, float(wall.equality_residual(forms)) * math.pi))
    return out


# ---------------------------------------------------------------------------
# totally reducible facets
# ---------------------------------------------------------------------------

FACET_TYPES = {
    # (m, n) are the H-levels over 2pi: the facet is
    # Sigma_{2(m+n)pi} & {H_ijk = 2m pi} & {H_bar = 2n pi}
    (1, 1): {(1, 2, 2): 1, (2, 1, 2): 1, (2, 2, 1): 1},
    (2, 2): {(2, 1, 1): 2, (1, 2, 1): 2, (1, 1, 2): 2},
    (3, 0): {(1, 1, 1): 3, (2, 1, 1): 4, (1, 2, 1): 4, (1, 1, 2): 4},
}


@dataclass(frozen=True)
class Facet:
    """A totally reducible facet: simultaneously diagonalizable solutions.

    The codimension-2 locus Sigma_{2(m+n)pi} & {H_ijk = 2m pi} &
    {H_bar = 2n pi}; equivalently sigma_ijk = 2(2m+n)pi/3 and
    sigma_bar = 2(2n+m)pi/3.  `facet_type` follows the four combinatorial
    positions of the three walls around the facet; combinations the
    classification does not cover are left None (unclassified).
    """

    ijk: tuple
    m: int
    n: int
    facet_type: int | None
    walls: tuple

    def to_json(self) -> dict:
        return {
            "ijk": list(self.ijk),
            "H_level_over_pi": 2 * self.m,
            "H_bar_level_over_pi": 2 * self.n,
            "S_level_over_pi": 2 * (self.m + self.n),
            "type": self.facet_type,
            "walls": [w.to_json() for w in self.walls],
        }


def _find_wall(kind: str, ijk, level: int) -> Wall:
    for w in _CATALOG:
        if w.kind == kind and w.level == level and (kind == "spherical" or w.ijk == ijk):
            return w
    layer = _layer_of_level(kind, level)
    return Wall(kind, None if kind == "spherical" else tuple(ijk), level, (),
                layer, interior=False, in_catalog=False)


def _layer_of_level(kind: str, level: int) -> Layer:
    r = (-level if kind == "spherical" else level) % 6
    return {0: Layer.ONE, 2: Layer.OMEGA, 4: Layer.OMEGA2}.get(r, Layer.ONE)


# ---------------------------------------------------------------------------
# sampling points on a wall
# ---------------------------------------------------------------------------


def _wall_inequalities(wall: Wall, margin: float):
    """Linear constraints g . x >= lo keeping a point on the truncated wall,
    inside the chamber, with the given margin.  x = (a1, a2, b1, b2, g1, g2)
    in units of pi."""
    rows = []
    for slot in range(6):
        e = [0.0] * 6
        e[slot] = 1.0
        rows.append((tuple(e), margin))              # x >= margin
        e2 = [0.0] * 6
        e2[slot] = -1.0
        rows.append((tuple(e2), margin - 2.0))       # x <= 2 - margin
    for top in (0, 2, 4):
        e = [0.0] * 6
        e[top], e[top + 1] = 1.0, -1.0
        rows.append((tuple(e), margin))              # a1 - a2 >= margin
    for tr in wall.truncations:
        grad = [0.0] * 6
        i, j, k = tr.ijk
        for slot, idx in ((0, i), (2, j), (4, k)):
            grad[slot + idx - 1] = 1.0
        if tr.op == "<=":
            rows.append((tuple(-g for g in grad), margin - tr.bound))
        else:
            rows.append((tuple(grad), tr.bound + margin))
    return rows


def wall_interior_point(wall: Wall, margin: float = 0.02) -> ClassTriple:
    """A point on the wall with the given margin to its truncations and to
    the chamber boundary, found by linear programming."""
    from scipy.optimize import linprog

    rows = _wall_inequalities(wall, 0.0)
    # maximize the common slack m: variables (x0..x5, m)
    a_ub, b_ub = [], []
    for grad, lo in rows:
        a_ub.append([-g for g in grad] + [1.0])
        b_ub.append(-lo)
    a_eq = [list(wall.gradient()) + [0.0]]
    b_eq = [float(wall.level)]
    res = linprog(
        c=[0.0] * 6 + [-1.0],
        A_ub=a_ub,
        b_ub=b_ub,
        A_eq=a_eq,
        b_eq=b_eq,
        bounds=[(0, 2)] * 6 + [(0, None)],
        method="highs",
    )
    if not res.success or res.x[6] < margin:
        raise ValueError(f"no interior point with margin {margin} on {wall}")
    x = res.x[:6]
    return _triple_from_coords(x)


def _triple_from_coords(x) -> ClassTriple:
    from horn21.angles import AnglePair

    return ClassTriple(
        AnglePair(float(x[0]), float(x[1])),
        AnglePair(float(x[2]), float(x[3])),
        AnglePair(float(x[4]), float(x[5])),
    )


def sample_wall_points(wall: Wall, n: int, rng, margin: float = 0.02,
                       other_wall_margin: float = 0.01) -> list:
    """Hit-and-run samples on the truncated wall, margin-separated from the
    chamber boundary, the truncations, and every other catalog wall of the
    same layer (so that two-sided probes resolve to cells, not OnWall)."""
    anchor = wall_interior_point(wall, margin)
    x = np.array(
        [float(v) for p in anchor.pairs for v in (p.a1, p.a2)], dtype=float
    )
    grad = np.array(wall.gradient(), dtype=float)
    grad_unit = grad / np.linalg.norm(grad)
    rows = _wall_inequalities(wall, margin)
    a_mat = np.array([r[0] for r in rows])
    lo = np.array([r[1] for r in rows])
    others = [w for w in _CATALOG if w.layer is wall.layer and w is not wall]
    out = []
    attempts = 0
    while len(out) < n and attempts < 200 * n:
        attempts += 1
        d = rng.standard_normal(6)
        d -= (d @ grad_unit) * grad_unit
        norm = np.linalg.norm(d)
        if norm < 1e-12:
            continue
        d /= norm
        # feasible interval for x + t d against g.(x + t d) >= lo
        gd = a_mat @ d
        gx = a_mat @ x - lo
        t_lo, t_hi = -np.inf, np.inf
        for num, den in zip(gx, gd):
            if abs(den) < 1e-14:
                if num < 0:
                    t_lo, t_hi = 1.0, 0.0
                    break
                continue
            bound = -num / den
            if den > 0:
                t_lo = max(t_lo, bound)
            else:
                t_hi = min(t_hi, bound)
        if not (t_lo < t_hi):
            continue
        t = rng.uniform(t_lo, t_hi)
        cand = x + t * d
        trip = _triple_from_coords(cand)
        forms = linear_forms(trip)
        if any(
            abs(float(w.equality_residual(forms))) < other_wall_margin
            and all(tr.holds(forms, other_wall_margin) for tr in w.truncations)
            for w in others
        ):
            x = cand  # keep walking, just do not record
            continue
        x = cand
        out.append(trip)
    if len(out) < n:
        raise ValueError(f"only {len(out)}/{n} samples found on {wall}")
    return out


def offset_triple(t: ClassTriple, wall: Wall, delta: float) -> ClassTriple:
    """Shift a wall point by `delta` (units of pi) along the wall's unit normal."""
    grad = np.array(wall.gradient(), dtype=float)
    grad /= np.linalg.norm(grad)
    x = np.array([float(v) for p in t.pairs for v in (p.a1, p.a2)]) + delta * grad
    return _triple_from_coords(x)


def facet_of(ijk, m: int, n: int) -> Facet:
    """The totally reducible facet T_ijk with H_ijk = 2m pi, H_bar = 2n pi.

    m, n in {0, 1, 2, 3}.  The three defining walls are resolved from the
    catalog when present, synthesized otherwise.  The type is taken from
    the classification table; anything outside it is honestly None.
    """
    ijk = tuple(ijk)
    if ijk not in IJK:
        raise ValueError(f"indices must be in {{1,2}}^3, got {ijk}")
    if not (0 <= m <= 3 and 0 <= n <= 3):
        raise ValueError("facet levels m, n must lie in {0, 1, 2, 3}")
    ftype = FACET_TYPES.get((m, n), {}).get(ijk)
    walls = (
        _find_wall("spherical", None, 2 * (m + n)),
        _find_wall("hyperbolic", ijk, 2 * m),
        _find_wall("hyperbolic", bar(ijk), 2 * n),
    )
    return Facet(ijk, m, n, ftype, walls)
