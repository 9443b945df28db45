"""Classification of PU(2,1) isometries and the bridge to angle coordinates.

The regular/loxodromic split uses Goldman's trace discriminant
f(z) = |z|^4 - 8 Re(z^3) + 18 |z|^2 - 27 of the SU-normalized trace z,
whose negative locus is exactly the regular elliptic set.  Inside the
|f| <= eps band the eigensystem decides between special elliptic and
parabolic, which the trace alone cannot separate.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from horn21.angles import AnglePair, ClassTriple, psi  # noqa: F401  (psi re-exported)
from horn21.linalg import (
    EPS_TYPE,
    EPS_UNITARY,
    J,
    GroupElement,
    HermitianForm,
    NonConvergence,
    VectorType,
    eigensystem_3x3,
    hermitian_pairing,
    su_normalize,
    vector_type,
)

EPS_DISC = 1e-7        # Goldman discriminant band triggering eigensystem inspection
LAYER_SNAP_TOL = 0.1   # max distance of the lift scalar to a cube root of unity

OMEGA = complex(np.exp(2j * np.pi / 3))


class NotElliptic(ValueError):
    pass


class NullPolarVector(ValueError):
    pass


class NotScalarProduct(ValueError):
    pass


class IsometryKind(enum.Enum):
    REGULAR_ELLIPTIC = "regular_elliptic"
    SPECIAL_ELLIPTIC = "special_elliptic"
    LOXODROMIC = "loxodromic"
    PARABOLIC = "parabolic"


class MirrorKind(enum.Enum):
    LINE = "line"
    POINT = "point"


class Layer(enum.Enum):
    """Cube root of unity u with (lift of A)(lift of B)(lift of C) = u Id."""

    ONE = "1"
    OMEGA = "omega"
    OMEGA2 = "omega2"

    @property
    def u(self) -> complex:
        return {Layer.ONE: 1 + 0j, Layer.OMEGA: OMEGA, Layer.OMEGA2: OMEGA.conjugate()}[self]

    @property
    def mirror(self) -> "Layer":
        return {Layer.ONE: Layer.ONE, Layer.OMEGA: Layer.OMEGA2, Layer.OMEGA2: Layer.OMEGA}[self]


@dataclass(frozen=True)
class IsometryClass:
    kind: IsometryKind
    pair: AnglePair | None = None
    mirror: MirrorKind | None = None

    @property
    def is_elliptic(self) -> bool:
        return self.kind in (IsometryKind.REGULAR_ELLIPTIC, IsometryKind.SPECIAL_ELLIPTIC)

    def to_json(self) -> dict:
        out = {"kind": self.kind.value}
        if self.pair is not None:
            out["angle_pair"] = self.pair.to_json()
        if self.mirror is not None:
            out["mirror"] = self.mirror.value
        return out


def elliptic_rep(p: AnglePair) -> GroupElement:
    """The diagonal J-unitary representative diag(e^{i a1}, e^{i a2}, 1)."""
    return GroupElement(
        np.diag([cmath.exp(1j * p.a1_rad), cmath.exp(1j * p.a2_rad), 1.0]), J
    )


def standard_lift(p: AnglePair) -> GroupElement:
    """The determinant-1 lift diag(e^{i(2a1-a2)/3}, e^{i(2a2-a1)/3}, e^{-i(a1+a2)/3})."""
    a1, a2 = p.a1_rad, p.a2_rad
    return GroupElement(
        np.diag(
            [
                cmath.exp(1j * (2 * a1 - a2) / 3),
                cmath.exp(1j * (2 * a2 - a1) / 3),
                cmath.exp(-1j * (a1 + a2) / 3),
            ]
        ),
        J,
    )


def goldman_discriminant(z: complex) -> float:
    return abs(z) ** 4 - 8 * (z**3).real + 18 * abs(z) ** 2 - 27


def _eigen_with_types(m: GroupElement):
    pairs = eigensystem_3x3(m.matrix)
    types = [vector_type(v, m.form) for _, v in pairs]
    return pairs, types


def _split_mixed_eigenspace(m: GroupElement, pairs, types):
    """Rediagonalize 2-dim eigenspaces whose restricted form is indefinite.

    A repeated eigenvalue of a special elliptic element can own a mixed
    2-space; diagonalizing the restriction of the form on it yields
    well-defined negative and positive directions.
    """
    done = []
    used = [False] * len(pairs)
    for i, (lam_i, v_i) in enumerate(pairs):
        if used[i]:
            continue
        group = [i] + [
            k
            for k in range(i + 1, len(pairs))
            if not used[k] and abs(pairs[k][0] - lam_i) < 1e-7
        ]
        for k in group:
            used[k] = True
        if len(group) == 1:
            done.append((lam_i, v_i, types[i]))
            continue
        basis = np.stack([pairs[k][1] for k in group], axis=1)
        gram = basis.conj().T @ m.form.matrix @ basis
        gram = (gram + gram.conj().T) / 2
        eigs, vecs = np.linalg.eigh(gram)
        for col in range(len(group)):
            w = basis @ vecs[:, col]
            w = w / np.linalg.norm(w)
            scale = float(np.vdot(w, w).real)
            s = eigs[col]
            if s < -EPS_TYPE * scale:
                ty = VectorType.NEGATIVE
            elif s > EPS_TYPE * scale:
                ty = VectorType.POSITIVE
            else:
                ty = VectorType.NULL
            done.append((lam_i, w, ty))
    return done


def angle_pair(m: GroupElement) -> AnglePair:
    """Angle pair of an elliptic element: rescale so the negative-type
    eigenvector has eigenvalue 1, return the positive eigenvalue arguments
    sorted descending.  Raises `NotElliptic` for non-elliptic input."""
    try:
        pairs, types = _eigen_with_types(m)
    except NonConvergence as exc:
        raise NotElliptic(f"not diagonalizable: {exc}") from exc
    triples = _split_mixed_eigenspace(m, pairs, types)
    if any(abs(abs(lam) - 1) > 1e-6 * max(abs(lam), 1) for lam, _, _ in triples):
        raise NotElliptic("spectrum is not on the unit circle")
    neg = [t for t in triples if t[2] is VectorType.NEGATIVE]
    pos = [t for t in triples if t[2] is VectorType.POSITIVE]
    if len(neg) != 1 or len(pos) != 2:
        raise NotElliptic(f"eigenvector types {[t[2].value for t in triples]}")
    lam_neg = neg[0][0] / abs(neg[0][0])   # project to the unit circle
    args = []
    for lam, _, _ in pos:
        ratio = (lam / abs(lam)) / lam_neg
        args.append(math.atan2(ratio.imag, ratio.real) % (2 * math.pi))
    return AnglePair.from_radians(max(args), min(args))


def negative_eigenvalue(m: GroupElement) -> complex:
    """Unit-circle projection of the eigenvalue on the negative-type direction."""
    pairs, types = _eigen_with_types(m)
    triples = _split_mixed_eigenspace(m, pairs, types)
    neg = [t for t in triples if t[2] is VectorType.NEGATIVE]
    if len(neg) != 1:
        raise NotElliptic("no unique negative-type eigendirection")
    lam = neg[0][0]
    return lam / abs(lam)


def classify(m: GroupElement, tol_unitary: float = EPS_UNITARY) -> IsometryClass:
    """Sort a J-unitary element into the elliptic/loxodromic/parabolic trichotomy."""
    m.validate(tol_unitary)
    z = complex(np.trace(su_normalize(m.matrix)))
    f = goldman_discriminant(z)
    if f < -EPS_DISC:
        return IsometryClass(IsometryKind.REGULAR_ELLIPTIC, angle_pair(m))
    if f > EPS_DISC:
        return IsometryClass(IsometryKind.LOXODROMIC)
    # discriminant band: distinguish special elliptic from parabolic
    try:
        pairs, types = _eigen_with_types(m)
    except NonConvergence:
        return IsometryClass(IsometryKind.PARABOLIC)
    if _is_defective(m.matrix, pairs):
        # near-parallel eigenvectors: a defective (triple-root) matrix sheds
        # root-splitting noise ~ eps^(1/3), so test this before the spectrum
        return IsometryClass(IsometryKind.PARABOLIC)
    if any(abs(abs(lam) - 1) > 1e-5 for lam, _ in pairs):
        return IsometryClass(IsometryKind.LOXODROMIC)
    triples = _split_mixed_eigenspace(m, pairs, types)
    mirror = _mirror_kind(triples)
    return IsometryClass(IsometryKind.SPECIAL_ELLIPTIC, angle_pair(m), mirror)


def _is_defective(mat: np.ndarray, pairs) -> bool:
    vecs = np.stack([v for _, v in pairs], axis=1)
    return abs(np.linalg.det(vecs)) < 1e-8


def _mirror_kind(triples) -> MirrorKind:
    """Line when the repeated eigenvalue's eigenspace contains the
    negative-type direction (the mirror meets complex hyperbolic space);
    point when the repeated eigenvalue owns a positive 2-space."""
    by_val: list[tuple[complex, list]] = []
    for lam, v, ty in triples:
        for key, bucket in by_val:
            if abs(lam - key) < 1e-7:
                bucket.append((lam, v, ty))
                break
        else:
            by_val.append((lam, [(lam, v, ty)]))
    repeated = [bucket for _, bucket in by_val if len(bucket) >= 2]
    if not repeated:
        # nominally special but with three split eigenvalues inside the band;
        # fall back to the angle-pair seam convention
        return MirrorKind.LINE
    bucket = max(repeated, key=len)
    if any(ty is VectorType.NEGATIVE for _, _, ty in bucket):
        return MirrorKind.LINE
    return MirrorKind.POINT


def complex_reflection(c, eta: complex, h: HermitianForm = J) -> GroupElement:
    """Reflection with polar vector c and rotation factor eta:
    z -> z + (eta - 1) (<z,c>/<c,c>) c.  Fixes the hyperplane c-orthogonal
    pointwise and maps c to eta c."""
    c = np.asarray(c, dtype=complex)
    cc = hermitian_pairing(c, c, h)
    if abs(cc) < EPS_TYPE * float(np.vdot(c, c).real):
        raise NullPolarVector("polar vector has null type")
    mat = np.eye(3, dtype=complex) + ((eta - 1) / cc) * np.outer(c, c.conj() @ h.matrix)
    return GroupElement(mat, h)


def class_triple_of(a: GroupElement, b: GroupElement, c: GroupElement) -> ClassTriple:
    return ClassTriple(angle_pair(a), angle_pair(b), angle_pair(c))


def layer_product(a: GroupElement, b: GroupElement, c: GroupElement) -> Layer:
    """The cube root of unity u with (standard lifts of a, b, c) = u Id.

    Requires a b c to be a scalar matrix (a Horn witness up to center);
    raises `NotScalarProduct` otherwise, or when the computed scalar is not
    within `LAYER_SNAP_TOL` of a cube root of unity.
    """
    prod = a.matrix @ b.matrix @ c.matrix
    lam = complex(np.trace(prod)) / 3
    scale = max(np.abs(prod).max(), 1.0)
    if np.abs(prod - lam * np.eye(3)).max() > EPS_UNITARY * 100 * scale:
        raise NotScalarProduct("a b c is not a scalar matrix")
    u = lam
    for g in (a, b, c):
        p = angle_pair(g)
        lift_scale = cmath.exp(-1j * (p.a1_rad + p.a2_rad) / 3) / negative_eigenvalue(g)
        u *= lift_scale
    candidates = [(abs(u - w), layer) for layer, w in
                  ((Layer.ONE, 1 + 0j), (Layer.OMEGA, OMEGA), (Layer.OMEGA2, OMEGA.conjugate()))]
    dist, best = min(candidates, key=lambda c: c[0])
    if dist > LAYER_SNAP_TOL:
        raise NotScalarProduct(
            f"lift product scalar {u:.6f} is {dist:.3f} from any cube root of unity"
        )
    return best
