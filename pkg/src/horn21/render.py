"""Two-dimensional slices of the solution set: rasters and SVG figures.

Two slice families: the symmetric slice (all three classes equal, a copy
of the chamber triangle) and fixed slices (beta and gamma pinned, alpha
free).  Every linear form restricts to an affine function of the slice
coordinates, so walls are straight segments and the five polytopes clip to
convex polygons.

Color code: red for the 4pi family, blue for the 6pi family, green for the
8pi family; bold segments are exterior walls, dotted ones interior.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from horn21.angles import AnglePair, ClassTriple
from horn21.isometry import Layer
from horn21.polytopes import PolytopeId, _POLYTOPE_SYSTEMS
from horn21.walls import IJK, Wall, bar, wall_catalog

TWO_PI = 2 * math.pi

LAYER_COLOR = {Layer.OMEGA: "#d62728", Layer.ONE: "#1f77b4", Layer.OMEGA2: "#2ca02c"}
POLYTOPE_COLOR = {
    PolytopeId.P4_MAIN: "#d62728",
    PolytopeId.P4_SPIKE: "#d62728",
    PolytopeId.P6: "#1f77b4",
    PolytopeId.P8_MAIN: "#2ca02c",
    PolytopeId.P8_SPIKE: "#2ca02c",
}
WALL_BAND_PIXELS = 1.5


@dataclass(frozen=True)
class SliceSpec:
    """A two-dimensional slice of T(G)^3.

    kind "symmetric": alpha = beta = gamma = (x, y).
    kind "fixed": alpha = (x, y) with beta and gamma pinned.
    """

    kind: str = "symmetric"
    beta: AnglePair | None = None
    gamma: AnglePair | None = None
    resolution: int = 600
    tol: float = 1e-7

    def __post_init__(self):
        if self.kind not in ("symmetric", "fixed"):
            raise ValueError(f"unknown slice kind {self.kind!r}")
        if self.kind == "fixed" and (self.beta is None or self.gamma is None):
            raise ValueError("fixed slices need beta and gamma")
        if self.resolution < 16:
            raise ValueError("resolution must be at least 16")

    def __str__(self):
        if self.kind == "symmetric":
            return "Sym"
        return f"Slice({self.beta},{self.gamma})"


def slice_triple(spec: SliceSpec, x: float, y: float) -> ClassTriple:
    """The class triple at slice coordinates (x, y) = (a1, a2) radians."""
    pair = AnglePair.from_radians(x, y)
    if spec.kind == "symmetric":
        return ClassTriple.symmetric(pair)
    return ClassTriple(pair, spec.beta, spec.gamma)


def _form_coefficients(spec: SliceSpec):
    """Affine restriction of every linear form to the slice.

    Returns {key: (c0, cx, cy)} with value = c0 + cx x + cy y in radians,
    keys "S" and ("H", ijk) and ("sigma", ijk).
    """
    if spec.kind == "symmetric":
        beta = gamma = None
    else:
        beta, gamma = spec.beta, spec.gamma

    def pair_terms(which, idx):
        """(c0, cx, cy) of alpha_idx/beta_idx/gamma_idx on the slice."""
        if spec.kind == "symmetric" or which == "alpha":
            return (0.0, 1.0, 0.0) if idx == 1 else (0.0, 0.0, 1.0)
        pinned = beta if which == "beta" else gamma
        return (pinned.a1_rad if idx == 1 else pinned.a2_rad, 0.0, 0.0)

    coeffs = {}
    sigma = {}
    for ijk in IJK:
        i, j, k = ijk
        terms = [pair_terms("alpha", i), pair_terms("beta", j), pair_terms("gamma", k)]
        sigma[ijk] = tuple(sum(t[d] for t in terms) for d in range(3))
    s_terms = [
        pair_terms(w, idx) for w in ("alpha", "beta", "gamma") for idx in (1, 2)
    ]
    coeffs["S"] = tuple(sum(t[d] for t in s_terms) for d in range(3))
    for ijk in IJK:
        coeffs[("sigma", ijk)] = sigma[ijk]
        coeffs[("H", ijk)] = tuple(
            2 * sigma[ijk][d] - sigma[bar(ijk)][d] for d in range(3)
        )
    return coeffs


def _wall_constraints(wall: Wall, coeffs):
    """(equality affine form, [halfplane affine forms g >= 0]) in radians."""
    if wall.kind == "spherical":
        eq = coeffs["S"]
        level = wall.level * math.pi
    else:
        eq = coeffs[("H", wall.ijk)]
        level = wall.level * math.pi
    eq = (eq[0] - level, eq[1], eq[2])
    halves = []
    for tr in wall.truncations:
        c = coeffs[("sigma", tr.ijk)]
        bound = tr.bound * math.pi
        if tr.op == "<=":
            halves.append((bound - c[0], -c[1], -c[2]))
        else:
            halves.append((c[0] - bound, c[1], c[2]))
    return eq, halves


def _domain_halfplanes():
    """x >= y, 0 <= y, x <= 2pi as g(x, y) >= 0 forms."""
    return [
        (0.0, 1.0, -1.0),     # x - y >= 0
        (0.0, 0.0, 1.0),      # y >= 0
        (TWO_PI, -1.0, 0.0),  # 2pi - x >= 0
    ]


def _clip_line(eq, halves):
    """Clip the line eq = 0 against halfplanes; None or a coordinate segment."""
    c0, cx, cy = eq
    grad = math.hypot(cx, cy)
    if grad < 1e-15:
        return None
    # point on the line and direction along it
    p0 = np.array([-c0 * cx, -c0 * cy]) / (grad * grad)
    d = np.array([-cy, cx]) / grad
    tmin, tmax = -1e9, 1e9
    for h0, hx, hy in halves:
        g0 = h0 + hx * p0[0] + hy * p0[1]
        gd = hx * d[0] + hy * d[1]
        if abs(gd) < 1e-15:
            if g0 < -1e-12:
                return None
            continue
        t_hit = -g0 / gd
        if gd > 0:
            tmin = max(tmin, t_hit)
        else:
            tmax = min(tmax, t_hit)
    if tmin >= tmax - 1e-12:
        return None
    a = p0 + tmin * d
    b = p0 + tmax * d
    return (float(a[0]), float(a[1])), (float(b[0]), float(b[1]))


def wall_segments(spec: SliceSpec):
    """Every catalog wall clipped to the slice: (wall, ((x0,y0),(x1,y1)))."""
    coeffs = _form_coefficients(spec)
    domain = _domain_halfplanes()
    out = []
    for wall in wall_catalog():
        eq, halves = _wall_constraints(wall, coeffs)
        seg = _clip_line(eq, halves + domain)
        if seg is not None:
            out.append((wall, seg))
    return out


def _polytope_polygon(pid: PolytopeId, coeffs):
    """The polytope's slice restriction as a convex polygon (or None)."""
    corners = [(0.0, 0.0), (TWO_PI, 0.0), (TWO_PI, TWO_PI)]
    poly = corners
    for form, ijk, op, level in _POLYTOPE_SYSTEMS[pid]:
        c = coeffs["S"] if form == "S" else coeffs[("H", ijk)]
        lv = level * math.pi
        if op == "<":
            half = (lv - c[0], -c[1], -c[2])
        else:
            half = (c[0] - lv, c[1], c[2])
        poly = _clip_polygon(poly, half)
        if not poly:
            return None
    return poly


def _clip_polygon(points, half):
    """Sutherland-Hodgman clip of a polygon against g(x, y) >= 0."""
    h0, hx, hy = half

    def val(p):
        return h0 + hx * p[0] + hy * p[1]

    out = []
    n = len(points)
    for idx in range(n):
        cur, nxt = points[idx], points[(idx + 1) % n]
        vc, vn = val(cur), val(nxt)
        if vc >= 0:
            out.append(cur)
        if (vc < 0) != (vn < 0):
            t = vc / (vc - vn)
            out.append((cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])))
    return out


@dataclass
class SliceRaster:
    """Per-pixel membership bits and wall bands over the slice triangle."""

    spec: SliceSpec
    xs: np.ndarray
    ys: np.ndarray
    domain: np.ndarray                      # inside the chamber triangle
    polytope_bits: dict = field(default_factory=dict)   # PolytopeId -> bool array
    wall_band: dict = field(default_factory=dict)       # Layer -> bool array
    segments: list = field(default_factory=list)

    def layer_bits(self, layer: Layer) -> np.ndarray:
        out = np.zeros_like(self.domain)
        for pid, bits in self.polytope_bits.items():
            if pid.layer is layer:
                out |= bits
        return out

    def component_count(self, layer: Layer) -> int:
        free = self.domain & ~self.wall_band[layer]
        labels, count = ndimage.label(free)
        # drop slivers below a few pixels; they are rasterization artifacts
        sizes = ndimage.sum_labels(np.ones_like(labels), labels, range(1, count + 1))
        return int(np.sum(sizes >= 4))


def rasterize(spec: SliceSpec) -> SliceRaster:
    """Evaluate membership and wall bands on a resolution^2 pixel grid."""
    res = spec.resolution
    px = TWO_PI / res
    centers = (np.arange(res) + 0.5) * px
    xs, ys = np.meshgrid(centers, centers)
    domain = xs >= ys
    coeffs = _form_coefficients(spec)

    raster = SliceRaster(spec, xs, ys, domain)
    for pid in PolytopeId:
        bits = np.ones_like(domain)
        for form, ijk, op, level in _POLYTOPE_SYSTEMS[pid]:
            c = coeffs["S"] if form == "S" else coeffs[("H", ijk)]
            v = c[0] + c[1] * xs + c[2] * ys
            bits &= (v < level * math.pi) if op == "<" else (v > level * math.pi)
        raster.polytope_bits[pid] = bits & domain

    raster.segments = wall_segments(spec)
    band_radius = WALL_BAND_PIXELS * px
    for layer in Layer:
        band = np.zeros_like(domain)
        for wall, seg in raster.segments:
            if wall.layer is not layer:
                continue
            band |= _segment_distance(xs, ys, seg) <= band_radius
        raster.wall_band[layer] = band
    return raster


def _segment_distance(xs, ys, seg):
    (x0, y0), (x1, y1) = seg
    dx, dy = x1 - x0, y1 - y0
    len2 = dx * dx + dy * dy
    if len2 < 1e-18:
        return np.hypot(xs - x0, ys - y0)
    t = ((xs - x0) * dx + (ys - y0) * dy) / len2
    t = np.clip(t, 0.0, 1.0)
    return np.hypot(xs - (x0 + t * dx), ys - (y0 + t * dy))


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def render_slice(spec: SliceSpec) -> str:
    """Deterministic SVG 1.1 document for a slice of the solution set."""
    size = spec.resolution
    scale = size / TWO_PI

    def to_px(p):
        return p[0] * scale, (TWO_PI - p[1]) * scale   # y up

    coeffs = _form_coefficients(spec)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="#ffffff"/>',
        f"<!-- {spec} -->",
    ]
    # domain triangle
    tri = [(0.0, 0.0), (TWO_PI, 0.0), (TWO_PI, TWO_PI)]
    pts = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in map(to_px, tri))
    parts.append(
        f'<polygon points="{pts}" fill="#f8f8f8" stroke="#000000" stroke-width="1"/>'
    )
    # polytope fills
    for pid in PolytopeId:
        poly = _polytope_polygon(pid, coeffs)
        if not poly or len(poly) < 3:
            continue
        pts = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in map(to_px, poly))
        parts.append(
            f'<polygon points="{pts}" fill="{POLYTOPE_COLOR[pid]}" fill-opacity="0.3" '
            f'stroke="none"/>'
        )
    # wall segments: bold exterior, dotted interior
    for wall, seg in wall_segments(spec):
        (x0, y0), (x1, y1) = seg
        p0, p1 = to_px((x0, y0)), to_px((x1, y1))
        style = 'stroke-width="2.5"' if not wall.interior else (
            'stroke-width="1.8" stroke-dasharray="6,5"'
        )
        parts.append(
            f'<line x1="{_fmt(p0[0])}" y1="{_fmt(p0[1])}" '
            f'x2="{_fmt(p1[0])}" y2="{_fmt(p1[1])}" '
            f'stroke="{LAYER_COLOR[wall.layer]}" {style}>'
            f"<title>{wall}</title></line>"
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
