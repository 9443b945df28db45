"""The five solution polytopes, the 28-cell table, and membership reports.

The solution set of the elliptic multiplicative Horn problem in PU(2,1) is
the closure of P_4pi u P_6pi u P_8pi, where

    P_4pi = {H_222 < -4pi} u
            {S < 4pi, H_122 < 2pi, H_212 < 2pi, H_221 < 2pi, H_111 > 2pi},
    P_6pi = {H_222 < 0, H_111 > 6pi},
    P_8pi = {H_111 > 10pi} u
            {S > 8pi, H_211 > 4pi, H_121 > 4pi, H_112 > 4pi, H_222 < 4pi},

five convex components in all.  Each layer's reducible walls cut T(G)^3
into cells that are entirely inside or entirely outside the layer's
solution set: 23 full cells and 5 empty ones.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from horn21.angles import AnglePair, ClassTriple, psi
from horn21.isometry import Layer
from horn21.walls import LinearFormValues, Wall, linear_forms, wall_catalog


class Unresolvable(RuntimeError):
    """No cell system matched; signals a catalog bug and must not occur."""


class NotInterior(ValueError):
    pass


class PolytopeId(enum.Enum):
    P4_MAIN = "P4pi"
    P4_SPIKE = "P4pi_spike"      # the {H_222 < -4pi} component
    P6 = "P6pi"
    P8_MAIN = "P8pi"
    P8_SPIKE = "P8pi_spike"      # the {H_111 > 10pi} component

    @property
    def layer(self) -> Layer:
        if self in (PolytopeId.P4_MAIN, PolytopeId.P4_SPIKE):
            return Layer.OMEGA
        if self is PolytopeId.P6:
            return Layer.ONE
        return Layer.OMEGA2


# each strict inequality: (form, ijk or None, op, level over pi)
_POLYTOPE_SYSTEMS = {
    PolytopeId.P4_MAIN: (
        ("S", None, "<", 4),
        ("H", (1, 2, 2), "<", 2),
        ("H", (2, 1, 2), "<", 2),
        ("H", (2, 2, 1), "<", 2),
        ("H", (1, 1, 1), ">", 2),
    ),
    PolytopeId.P4_SPIKE: (("H", (2, 2, 2), "<", -4),),
    PolytopeId.P6: (("H", (2, 2, 2), "<", 0), ("H", (1, 1, 1), ">", 6)),
    PolytopeId.P8_MAIN: (
        ("S", None, ">", 8),
        ("H", (2, 1, 1), ">", 4),
        ("H", (1, 2, 1), ">", 4),
        ("H", (1, 1, 2), ">", 4),
        ("H", (2, 2, 2), "<", 4),
    ),
    PolytopeId.P8_SPIKE: (("H", (1, 1, 1), ">", 10),),
}


def _value(forms: LinearFormValues, form: str, ijk):
    return forms.S if form == "S" else forms.H(*ijk)


def _system_holds(forms: LinearFormValues, system, slack: float) -> bool:
    """Strict system, relaxed outward by `slack` (units of pi, >= 0)."""
    for form, ijk, op, level in system:
        v = float(_value(forms, form, ijk))
        if op == "<":
            if not (v < level + slack):
                return False
        else:
            if not (v > level - slack):
                return False
    return True


def polytope_strict(forms: LinearFormValues, pid: PolytopeId) -> bool:
    return _system_holds(forms, _POLYTOPE_SYSTEMS[pid], 0.0)


def polytope_closure(forms: LinearFormValues, pid: PolytopeId, tol_rad: float) -> bool:
    return _system_holds(forms, _POLYTOPE_SYSTEMS[pid], tol_rad / math.pi)


@dataclass(frozen=True)
class CellId:
    layer: Layer
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class OnWall:
    """Returned instead of a CellId when layer walls are active at the point."""

    walls: tuple

    def __str__(self):
        return "OnWall{" + ", ".join(w.name for w in self.walls) + "}"


@dataclass(frozen=True)
class CellRecord:
    id: CellId
    full: bool
    system: str


def _sign_name(prefix: str, signs) -> str:
    s = "".join("+" if x else "-" for x in signs)
    return f"C_{prefix}^{{{s}}}"


_SIGN_TRIPLES = [(s1, s2, s3) for s1 in (False, True) for s2 in (False, True) for s3 in (False, True)]


def _build_cell_table() -> tuple:
    records = []
    # layer omega: eight sign cells in the main component, the spike, two empty
    for signs in _SIGN_TRIPLES:
        name = _sign_name("4pi", signs)
        ops = [(">" if s else "<") for s in signs]
        system = (
            f"P4pi & H_211 {ops[0]} 2pi & H_121 {ops[1]} 2pi & H_112 {ops[2]} 2pi"
        )
        records.append(CellRecord(CellId(Layer.OMEGA, name), True, system))
    records.append(CellRecord(CellId(Layer.OMEGA, "C_4pi^{-}"), True, "H_222 < -4pi"))
    records.append(
        CellRecord(
            CellId(Layer.OMEGA, "C_4pi^{c,1}"),
            False,
            "H_222 > -4pi & (S > 4pi | H_122 > 2pi | H_212 > 2pi | H_221 > 2pi)",
        )
    )
    records.append(CellRecord(CellId(Layer.OMEGA, "C_4pi^{c,2}"), False, "H_111 < 2pi"))
    # layer one: three corner cells, two sides of Sigma_6pi, one empty
    for tag, (hn, hp) in (
        ("221", ("H_221 < 0", "H_112 > 6pi")),
        ("212", ("H_212 < 0", "H_121 > 6pi")),
        ("122", ("H_122 < 0", "H_211 > 6pi")),
    ):
        records.append(
            CellRecord(CellId(Layer.ONE, f"C_6pi^{{{tag}}}"), True, f"P6pi & {hn} & {hp}")
        )
    records.append(
        CellRecord(
            CellId(Layer.ONE, "C_6pi^{+}"),
            True,
            "P6pi & S > 6pi & H_221 > 0 & H_212 > 0 & H_122 > 0",
        )
    )
    records.append(
        CellRecord(
            CellId(Layer.ONE, "C_6pi^{-}"),
            True,
            "P6pi & S < 6pi & H_112 < 6pi & H_121 < 6pi & H_211 < 6pi",
        )
    )
    records.append(
        CellRecord(CellId(Layer.ONE, "C_6pi^{c}"), False, "H_222 > 0 | H_111 < 6pi")
    )
    # layer omega^2: mirror of layer omega under psi
    for signs in _SIGN_TRIPLES:
        name = _sign_name("8pi", signs)
        ops = [(">" if s else "<") for s in signs]
        system = (
            f"P8pi & H_122 {ops[0]} 4pi & H_212 {ops[1]} 4pi & H_221 {ops[2]} 4pi"
        )
        records.append(CellRecord(CellId(Layer.OMEGA2, name), True, system))
    records.append(CellRecord(CellId(Layer.OMEGA2, "C_8pi^{+}"), True, "H_111 > 10pi"))
    records.append(
        CellRecord(
            CellId(Layer.OMEGA2, "C_8pi^{c,1}"),
            False,
            "H_111 < 10pi & (S < 8pi | H_211 < 4pi | H_121 < 4pi | H_112 < 4pi)",
        )
    )
    records.append(CellRecord(CellId(Layer.OMEGA2, "C_8pi^{c,2}"), False, "H_222 > 4pi"))
    return tuple(records)


_CELL_TABLE = _build_cell_table()
_CELL_BY_ID = {rec.id: rec for rec in _CELL_TABLE}


def cell_table() -> tuple:
    """The static table of 28 cells (23 full, 5 empty)."""
    return _CELL_TABLE


def cell_record(cid: CellId) -> CellRecord:
    return _CELL_BY_ID[cid]


def cell_id(t: ClassTriple, layer: Layer, tol: float | None = None):
    """The cell of `t` in the given layer, or OnWall(active walls).

    Off the layer's walls the strict systems of the cell table tile the
    chamber, so exactly one cell matches; `Unresolvable` guards the
    impossible no-match case.
    """
    if not t.is_interior:
        raise NotInterior(f"cell identification needs an interior triple, got {t}")
    tol = _default_tol(t) if tol is None else tol
    forms = linear_forms(t)
    active = [
        w for w in wall_catalog() if w.layer is layer and w.is_active(forms, tol)
    ]
    if active:
        return OnWall(tuple(active))
    if layer is Layer.OMEGA:
        return _cell_omega(forms)
    if layer is Layer.ONE:
        return _cell_one(forms)
    return _cell_omega2(forms)


def _default_tol(t: ClassTriple) -> float:
    # symbolic inputs separate exactly; sampled matrices carry float noise
    return 1e-9 if t.is_exact else 1e-7


def _cell_omega(forms: LinearFormValues) -> CellId:
    h222 = float(forms.H(2, 2, 2))
    if h222 < -4:
        return CellId(Layer.OMEGA, "C_4pi^{-}")
    if polytope_strict(forms, PolytopeId.P4_MAIN):
        signs = tuple(float(forms.H(*ijk)) > 2 for ijk in ((2, 1, 1), (1, 2, 1), (1, 1, 2)))
        return CellId(Layer.OMEGA, _sign_name("4pi", signs))
    if float(forms.H(1, 1, 1)) < 2:
        return CellId(Layer.OMEGA, "C_4pi^{c,2}")
    if h222 > -4 and (
        float(forms.S) > 4
        or any(float(forms.H(*ijk)) > 2 for ijk in ((1, 2, 2), (2, 1, 2), (2, 2, 1)))
    ):
        return CellId(Layer.OMEGA, "C_4pi^{c,1}")
    raise Unresolvable(f"no omega cell matches forms {forms}")


def _cell_one(forms: LinearFormValues) -> CellId:
    if float(forms.H(2, 2, 2)) > 0 or float(forms.H(1, 1, 1)) < 6:
        return CellId(Layer.ONE, "C_6pi^{c}")
    for tag, neg, pos in (
        ("221", (2, 2, 1), (1, 1, 2)),
        ("212", (2, 1, 2), (1, 2, 1)),
        ("122", (1, 2, 2), (2, 1, 1)),
    ):
        if float(forms.H(*neg)) < 0 and float(forms.H(*pos)) > 6:
            return CellId(Layer.ONE, f"C_6pi^{{{tag}}}")
    s = float(forms.S)
    if s > 6 and all(float(forms.H(*ijk)) > 0 for ijk in ((2, 2, 1), (2, 1, 2), (1, 2, 2))):
        return CellId(Layer.ONE, "C_6pi^{+}")
    if s < 6 and all(float(forms.H(*ijk)) < 6 for ijk in ((1, 1, 2), (1, 2, 1), (2, 1, 1))):
        return CellId(Layer.ONE, "C_6pi^{-}")
    raise Unresolvable(f"no layer-1 cell matches forms {forms}")


def _cell_omega2(forms: LinearFormValues) -> CellId:
    h111 = float(forms.H(1, 1, 1))
    if h111 > 10:
        return CellId(Layer.OMEGA2, "C_8pi^{+}")
    if polytope_strict(forms, PolytopeId.P8_MAIN):
        signs = tuple(float(forms.H(*ijk)) > 4 for ijk in ((1, 2, 2), (2, 1, 2), (2, 2, 1)))
        return CellId(Layer.OMEGA2, _sign_name("8pi", signs))
    if float(forms.H(2, 2, 2)) > 4:
        return CellId(Layer.OMEGA2, "C_8pi^{c,2}")
    if h111 < 10 and (
        float(forms.S) < 8
        or any(float(forms.H(*ijk)) < 4 for ijk in ((2, 1, 1), (1, 2, 1), (1, 1, 2)))
    ):
        return CellId(Layer.OMEGA2, "C_8pi^{c,1}")
    raise Unresolvable(f"no omega^2 cell matches forms {forms}")


@dataclass(frozen=True)
class MembershipReport:
    """The answer of the polytope test at one class triple.

    `member` uses closure semantics (strict inequalities relaxed by tol):
    the headline theorem describes the closed solution set.  `layers` and
    `polytopes` list everything whose closure contains the triple.
    `boundary_caveat` is set off the interior of T(G)^3, where the
    closed-set guarantee is not stated.
    """

    triple: ClassTriple
    interior: bool
    member: bool
    layers: frozenset
    polytopes: tuple
    cell_per_layer: dict = field(default_factory=dict)
    boundary_caveat: bool = False

    def to_json(self) -> dict:
        cells = {}
        for layer, cell in self.cell_per_layer.items():
            if isinstance(cell, OnWall):
                cells[layer.value] = {"on_wall": [w.name for w in cell.walls]}
            else:
                cells[layer.value] = cell.name
        return {
            "triple": self.triple.to_json(),
            "interior": self.interior,
            "member": self.member,
            "layers": sorted(l.value for l in self.layers),
            "polytopes": [p.value for p in self.polytopes],
            "cell_per_layer": cells,
            "boundary_caveat": self.boundary_caveat,
        }


def polytope_member(t: ClassTriple, tol: float | None = None) -> MembershipReport:
    """Closure membership of a class triple in the five solution polytopes."""
    tol = _default_tol(t) if tol is None else tol
    forms = linear_forms(t)
    members = tuple(pid for pid in PolytopeId if polytope_closure(forms, pid, tol))
    layers = frozenset(p.layer for p in members)
    interior = t.is_interior
    cells = {}
    if interior:
        for layer in Layer:
            cells[layer] = cell_id(t, layer, tol)
    return MembershipReport(
        triple=t,
        interior=interior,
        member=bool(members),
        layers=layers,
        polytopes=members,
        cell_per_layer=cells,
        boundary_caveat=not interior,
    )


def surjective_pair(alpha: AnglePair, beta: AnglePair) -> bool:
    """Criterion for the product map at fixed first two classes to reach
    every third class: 2(a1+b1) - (a2+b2) >= 6pi and
    2(a2+b2) - (a1+b1) <= -2pi."""
    s1 = alpha.a1 + beta.a1
    s2 = alpha.a2 + beta.a2
    return 2 * s1 - s2 >= 6 and 2 * s2 - s1 <= -2


def psi_consistency(t: ClassTriple, tol: float | None = None) -> bool:
    """Membership agrees with the psi-image under the P4 <-> P8 swap."""
    if not t.is_interior:
        raise NotInterior("psi consistency is stated for interior triples")
    swap = {
        PolytopeId.P4_MAIN: PolytopeId.P8_MAIN,
        PolytopeId.P4_SPIKE: PolytopeId.P8_SPIKE,
        PolytopeId.P6: PolytopeId.P6,
        PolytopeId.P8_MAIN: PolytopeId.P4_MAIN,
        PolytopeId.P8_SPIKE: PolytopeId.P4_SPIKE,
    }
    ours = polytope_member(t, tol)
    theirs = polytope_member(psi(t), tol)
    expected = frozenset(swap[p] for p in ours.polytopes)
    return expected == frozenset(theirs.polytopes)
