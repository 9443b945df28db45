"""Explicit Horn solutions in U(2) and PU(1,1), with constructive witnesses.

The U(2) answer is five components pinned by the total angle sum S in
{0, 2pi, ..., 8pi}, each cut out by four sigma inequalities.  The PU(1,1)
answer is sigma <= 2pi or sigma >= 4pi; its witnesses come from a real
hyperbolic triangle with half the requested angles, realized as rotation
matrices in U(1,1) acting on the Poincare disk.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from numbers import Real

import numpy as np

from horn21.angles import AnglePair

DEFAULT_TOL = 1e-9  # radians, for level matching on float inputs

# component -> (S level over pi, [(indices, bound over pi), ...])
U2_COMPONENTS = {
    "C_0": (0, []),
    "C_2pi": (2, [((2, 2, 2), 0), ((1, 1, 2), 2), ((1, 2, 1), 2), ((2, 1, 1), 2)]),
    "C_4pi": (4, [((1, 1, 1), 4), ((1, 2, 2), 2), ((2, 1, 2), 2), ((2, 2, 1), 2)]),
    "C_6pi": (6, [((2, 2, 2), 2), ((1, 1, 2), 4), ((1, 2, 1), 4), ((2, 1, 1), 4)]),
    "C_8pi": (8, [((1, 1, 1), 6), ((1, 2, 2), 4), ((2, 1, 2), 4), ((2, 2, 1), 4)]),
}


class NoSolution(ValueError):
    pass


class BisectionFailure(RuntimeError):
    """The bisection target is not bracketed; a tolerance or edge case."""


class DegenerateAngle(ValueError):
    pass


def _sigma(t, i: int, j: int, k: int) -> Real:
    alpha, beta, gamma = t
    return (
        (alpha.a1 if i == 1 else alpha.a2)
        + (beta.a1 if j == 1 else beta.a2)
        + (gamma.a1 if k == 1 else gamma.a2)
    )


def u2_member(t, tol: float = DEFAULT_TOL):
    """Membership in the U(2) Horn solution set.

    `t` is a triple of `AnglePair`.  Returns ``(member, component)`` where
    component is one of "C_0", "C_2pi", "C_4pi", "C_6pi", "C_8pi" or None.
    S pins the component, so at most one can match.
    """
    tol_pi = tol / math.pi
    pairs = tuple(t)
    s = sum(p.a1 + p.a2 for p in pairs)
    for name, (level, conds) in U2_COMPONENTS.items():
        if abs(float(s) - level) > tol_pi:
            continue
        if all(float(_sigma(pairs, *ijk)) <= bound + tol_pi for ijk, bound in conds):
            return True, name
        return False, None
    return False, None


def u2_construct(t, tol: float = DEFAULT_TOL):
    """Witness (A, B, C) in U(2)^3 with ABC = Id and the requested classes.

    A is diagonal; B is conjugated by a real rotation Q(t*) where t* is
    located by bisection: the trace of AB moves along a straight segment as
    t sweeps [0, pi/2], and the class of C = (AB)^-1 is determined by that
    trace, so membership guarantees a bracket.
    """
    member, _ = u2_member(t, tol)
    if not member:
        raise NoSolution(f"not a U(2) Horn solution: {tuple(str(p) for p in t)}")
    alpha, beta, gamma = t
    a = np.diag([cmath.exp(1j * alpha.a1_rad), cmath.exp(1j * alpha.a2_rad)])
    b_diag = np.diag([cmath.exp(1j * beta.a1_rad), cmath.exp(1j * beta.a2_rad)])

    def rot(theta: float) -> np.ndarray:
        c, s = math.cos(theta), math.sin(theta)
        return np.array([[c, -s], [s, c]])

    def ab(theta: float) -> np.ndarray:
        q = rot(theta)
        return a @ (q @ b_diag @ q.T)

    # collinear trace coordinate: tr AB(t) = r(t) e^{i s_half} with r real
    s_half = (alpha.a1_rad + alpha.a2_rad + beta.a1_rad + beta.a2_rad) / 2
    phase = cmath.exp(-1j * s_half)

    def coord(theta: float) -> float:
        return (np.trace(ab(theta)) * phase).real

    target = ((cmath.exp(-1j * gamma.a1_rad) + cmath.exp(-1j * gamma.a2_rad)) * phase).real
    lo, hi = 0.0, math.pi / 2
    g_lo, g_hi = coord(lo), coord(hi)
    if abs(g_hi - g_lo) < 1e-15:
        t_star = 0.0
        if abs(g_lo - target) > 1e-9:
            raise BisectionFailure("degenerate rotation path misses the target class")
    else:
        if g_lo > g_hi:
            # make the path increasing for the bisection below
            lo, hi, g_lo, g_hi = hi, lo, g_hi, g_lo
        if not (g_lo - 1e-9 <= target <= g_hi + 1e-9):
            raise BisectionFailure(
                f"target {target:.6f} outside path [{g_lo:.6f}, {g_hi:.6f}]"
            )
        for _ in range(200):
            mid = (lo + hi) / 2
            if coord(mid) < target:
                lo = mid
            else:
                hi = mid
        t_star = (lo + hi) / 2

    def class_err(theta: float) -> float:
        c = np.linalg.inv(ab(theta))
        got = np.mod(np.angle(np.linalg.eigvals(c)), 2 * math.pi)
        return _class_error(got, (gamma.a1_rad, gamma.a2_rad))

    # the path parameterization is quadratic at its endpoints, so rounding in
    # the target can leave t_star ~ sqrt(eps) short of an exact endpoint hit
    t_star = min((t_star, 0.0, math.pi / 2), key=class_err)

    b = rot(t_star) @ b_diag @ rot(t_star).T
    c = np.linalg.inv(a @ b)
    err = class_err(t_star)
    if err > 1e-9:
        raise BisectionFailure(f"constructed class misses gamma by {err:.2e}")
    return a, b, c


def _class_error(got, want) -> float:
    def circ(x, y):
        d = abs(x - y) % (2 * math.pi)
        return min(d, 2 * math.pi - d)

    return max(circ(g, w) for g, w in zip(sorted(got), sorted(want)))


def pu11_member(angles, tol: float = DEFAULT_TOL):
    """Membership for PU(1,1): sigma <= 2pi (layer -1) or sigma >= 4pi (layer +1)."""
    tol_pi = tol / math.pi
    s = float(sum(angles))
    if s <= 2 + tol_pi:
        return True, -1
    if s >= 4 - tol_pi:
        return True, +1
    return False, None


def _transvection(p: complex) -> np.ndarray:
    """The U(1,1) element moving 0 to p in the Poincare disk."""
    g = 1 / math.sqrt(1 - abs(p) ** 2)
    return g * np.array([[1, p], [p.conjugate(), 1]])


def disk_rotation(p: complex, theta: float) -> np.ndarray:
    """SU(1,1) rotation by theta about the disk point p (half-angle lift)."""
    half = np.diag([cmath.exp(1j * theta / 2), cmath.exp(-1j * theta / 2)])
    t = _transvection(p)
    return t @ half @ np.linalg.inv(t)


def _triangle_vertices(a2: float, b2: float, c2: float):
    """Vertices of a hyperbolic triangle with angles a2, b2, c2 (sum < pi).

    Vertex with angle a2 at the origin, the b2 vertex on the positive real
    axis, the c2 vertex in the upper half of the disk.  Side lengths come
    from the law of cosines cosh c = (cos C + cos A cos B)/(sin A sin B).
    """
    def side(opposite, left, right):
        num = math.cos(opposite) + math.cos(left) * math.cos(right)
        den = math.sin(left) * math.sin(right)
        return math.acosh(max(num / den, 1.0))

    len_ab = side(c2, a2, b2)   # side between the a2 and b2 vertices
    len_ac = side(b2, a2, c2)
    va = 0j
    vb = complex(math.tanh(len_ab / 2))
    vc = math.tanh(len_ac / 2) * cmath.exp(1j * a2)
    return va, vb, vc


def pu11_construct(angles, tol: float = DEFAULT_TOL):
    """Witness (A, B, C) in U(1,1)^3 with scalar product and rotation angles
    (alpha, beta, gamma).

    For sigma < 2pi the three elements rotate by the requested angles about
    the vertices of a hyperbolic triangle with angles alpha/2, beta/2,
    gamma/2; for sigma > 4pi the same construction on the complementary
    angles is inverted and reversed; at sigma in {2pi, 4pi} the rotations
    share a single fixed point.  Matrices are determinant-1 half-angle
    lifts, so the product is +/- Id.
    """
    angles = tuple(float(x) for x in angles)   # units of pi
    if any(a <= 0 for a in angles):
        raise DegenerateAngle("triangle construction requires strictly positive angles")
    member, _ = pu11_member(angles, tol)
    if not member:
        raise NoSolution(f"sigma = {sum(angles):.6f} pi lies in the (2pi, 4pi) gap")
    sigma = sum(angles)
    tol_pi = tol / math.pi
    alpha, beta, gamma = (a * math.pi for a in angles)

    if abs(sigma - 2) <= tol_pi or abs(sigma - 4) <= tol_pi:
        return (
            disk_rotation(0j, alpha),
            disk_rotation(0j, beta),
            disk_rotation(0j, gamma),
        )

    if sigma < 2:
        # rotations about the vertices compose as products of reflections in
        # the sides: (s_AC s_AB)(s_AB s_BC)(s_BC s_AC) = Id, all senses
        # counterclockwise for this vertex placement
        va, vb, vc = _triangle_vertices(alpha / 2, beta / 2, gamma / 2)
        triple = (
            disk_rotation(va, alpha),
            disk_rotation(vb, beta),
            disk_rotation(vc, gamma),
        )
    else:
        # build for the complementary classes in reversed order, then invert
        comp = (2 - angles[2], 2 - angles[1], 2 - angles[0])
        x, y, z = pu11_construct(comp, tol)
        triple = (np.linalg.inv(z), np.linalg.inv(y), np.linalg.inv(x))

    prod = triple[0] @ triple[1] @ triple[2]
    lam = np.trace(prod) / 2
    if np.abs(prod - lam * np.eye(2)).max() > 1e-9:
        raise BisectionFailure("triangle rotations failed to telescope to a scalar")
    return triple


def rotation_angle(m: np.ndarray) -> float:
    """Rotation angle of an elliptic U(1,1) element: arg of the eigenvalue
    ratio (positive-type over negative-type direction), in [0, 2pi)."""
    evals, evecs = np.linalg.eig(m)
    j11 = np.diag([1.0, -1.0])
    types = [float((evecs[:, k].conj() @ j11 @ evecs[:, k]).real) for k in range(2)]
    kneg = int(np.argmin(types))
    ratio = evals[1 - kneg] / evals[kneg]
    return float(np.angle(ratio)) % (2 * math.pi)
