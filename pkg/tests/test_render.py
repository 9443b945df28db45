import math
from fractions import Fraction

import numpy as np
import pytest

from horn21.angles import AnglePair
from horn21.isometry import Layer
from horn21.polytopes import PolytopeId
from horn21.render import (
    SliceSpec,
    rasterize,
    render_slice,
    slice_triple,
    wall_segments,
)
from horn21.walls import linear_forms


SYM = SliceSpec(kind="symmetric", resolution=200)
PAUPERT_1 = SliceSpec(
    kind="fixed",
    beta=AnglePair(Fraction(5, 4), Fraction(1, 2)),
    gamma=AnglePair(Fraction(11, 6), Fraction(1, 2)),
    resolution=200,
)


def test_slice_triple_symmetric():
    t = slice_triple(SYM, 1.0, 0.5)
    assert t.alpha == t.beta == t.gamma
    assert math.isclose(t.alpha.a1_rad, 1.0)


def test_svg_deterministic():
    assert render_slice(SYM) == render_slice(SYM)
    svg = render_slice(PAUPERT_1)
    assert svg.startswith("<?xml") and "<svg" in svg and svg.rstrip().endswith("</svg>")


def test_wall_segment_endpoints_on_hyperplane():
    from horn21.render import _form_coefficients

    for spec in (SYM, PAUPERT_1):
        pixel = 2 * math.pi / spec.resolution
        coeffs = _form_coefficients(spec)
        for wall, seg in wall_segments(spec):
            key = "S" if wall.kind == "spherical" else ("H", wall.ijk)
            c0, cx, cy = coeffs[key]
            level = wall.level * math.pi
            grad = math.hypot(cx, cy)
            for x, y in seg:
                # perpendicular distance to the restricted hyperplane, pixels
                distance = abs(c0 + cx * x + cy * y - level) / grad
                assert distance <= 0.5 * pixel


def test_symmetric_component_counts():
    raster = rasterize(SYM)
    assert raster.component_count(Layer.OMEGA) == 5
    assert raster.component_count(Layer.ONE) == 3
    assert raster.component_count(Layer.OMEGA2) == 5


def test_paupert1_only_p6():
    raster = rasterize(PAUPERT_1)
    assert raster.component_count(Layer.ONE) == 6
    for pid in PolytopeId:
        bits = raster.polytope_bits[pid]
        if pid is PolytopeId.P6:
            assert bits.any()
        else:
            assert not bits.any()


def test_raster_membership_matches_polytope_member():
    from horn21.polytopes import polytope_member, polytope_strict
    from horn21.walls import linear_forms as lf

    raster = rasterize(SliceSpec(kind="symmetric", resolution=64))
    rng = np.random.default_rng(1)
    idx = rng.integers(0, 64, size=(50, 2))
    for ix, iy in idx:
        if not raster.domain[iy, ix]:
            continue
        t = slice_triple(SYM, float(raster.xs[iy, ix]), float(raster.ys[iy, ix]))
        forms = lf(t)
        for pid in PolytopeId:
            assert raster.polytope_bits[pid][iy, ix] == polytope_strict(forms, pid)


def test_spec_validation():
    with pytest.raises(ValueError):
        SliceSpec(kind="fixed")
    with pytest.raises(ValueError):
        SliceSpec(kind="symmetric", resolution=4)
