"""Matrix-level ground truth for the polytope answer.

Witness search runs a strategy cascade: exact block constructions on
active reducible walls (a U(2) block over a spherical wall, a U(1) x
U(1,1) block over a hyperbolic wall), and otherwise a Monte-Carlo sweep of
conjugators for the middle factor, with A held diagonal (the product class
depends only on double cosets, so fixing A loses no generality).  The
sweep is vectorized: eigenvalues of whole batches come from the closed
form in `horn21.linalg`, and the negative-type eigendirection is read off
the adjugate of (M - lambda I).  The best candidate is polished by
derivative-free coordinate descent over a 4-parameter conjugator chart.

Nothing here proves emptiness; a `WitnessNotFound` carries the sample
count and the smallest class distance achieved, statistical evidence only.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from horn21.angles import AnglePair, ClassTriple
from horn21.horn_low import (
    DegenerateAngle,
    NoSolution,
    pu11_construct,
    u2_construct,
)
from horn21.isometry import (
    Layer,
    angle_pair,
    classify,
    elliptic_rep,
    layer_product,
)
from horn21.linalg import (
    J,
    GroupElement,
    HermitianForm,
    VectorType,
    _adjugate3,
    _det3,
    batch_eigvals_3x3,
    congruence_to_canonical,
    vector_type,
)
from horn21.polytopes import polytope_member
from horn21.walls import active_walls

_J = np.diag([1.0, 1.0, -1.0]).astype(complex)

DEGENERATE_DRAW_LIMIT = 100


class Degenerate(RuntimeError):
    """Random draws kept landing on the null cone; practically unreachable."""


class WitnessNotFound(RuntimeError):
    """Budget exhausted without a witness: statistical evidence of emptiness."""

    def __init__(self, samples: int, min_class_distance: float):
        super().__init__(
            f"no witness in {samples} samples; "
            f"closest class distance {min_class_distance:.3e} rad"
        )
        self.samples = samples
        self.min_class_distance = min_class_distance


@dataclass(frozen=True)
class SamplerConfig:
    seed: int = 42
    budget: int = 200_000
    tol: float = 1e-4          # radians: final class-matching tolerance
    batch: int = 4096

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("budget must be at least 1")


class Reducibility:
    IRREDUCIBLE = "irreducible"
    SPHERICAL = "spherical"
    HYPERBOLIC = "hyperbolic"
    TOTAL = "total"


@dataclass(frozen=True)
class WitnessTriple:
    a: GroupElement
    b: GroupElement
    c: GroupElement
    product_scalar: complex
    layer: Layer
    reducibility: str
    class_error: float = 0.0

    def to_json(self) -> dict:
        return {
            "A": self.a.to_json(),
            "B": self.b.to_json(),
            "C": self.c.to_json(),
            "product_scalar": {"re": self.product_scalar.real, "im": self.product_scalar.imag},
            "layer": self.layer.value,
            "reducibility": self.reducibility,
            "class_error": self.class_error,
        }


# ---------------------------------------------------------------------------
# random J-unitary elements
# ---------------------------------------------------------------------------


def _randn_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_u21(rng) -> GroupElement:
    """A J-unitary matrix by J-Gram-Schmidt: a random negative vector,
    completed with two J-orthonormal positive ones; columns ordered
    positive, positive, negative."""
    m = random_u21_batch(rng, 1)[0]
    return GroupElement(m, J)


def random_u21_batch(rng, n: int) -> np.ndarray:
    """Vectorized `random_u21`: an (n, 3, 3) stack of J-unitary matrices.

    Draws too close to the null cone are resampled: normalizing them
    amplifies rounding to the point of breaking the form-preservation
    budget.  Each column is J-orthogonalized twice against its
    predecessors (one pass leaves a cancellation residue).
    """
    def jdot(u, v):
        return np.einsum("ni,ni->n", u.conj() * np.array([1, 1, -1]), v)

    neg = np.empty((n, 3), dtype=complex)
    need = np.ones(n, dtype=bool)
    for _ in range(DEGENERATE_DRAW_LIMIT):
        if not need.any():
            break
        draw = _randn_complex(rng, (int(need.sum()), 3))
        norms = jdot(draw, draw).real
        euclid = np.einsum("ni,ni->n", draw.conj(), draw).real
        good = norms < -0.05 * euclid
        idx = np.flatnonzero(need)
        take = idx[good]
        neg[take] = draw[good] / np.sqrt(-norms[good, None])
        need[take] = False
    if need.any():
        raise Degenerate("could not draw a negative-type vector")

    cols = [None, None, neg]
    prev = [neg]
    for slot in (0, 1):
        vec = np.empty((n, 3), dtype=complex)
        need = np.ones(n, dtype=bool)
        for _ in range(DEGENERATE_DRAW_LIMIT):
            if not need.any():
                break
            idx = np.flatnonzero(need)
            w_full = np.zeros((n, 3), dtype=complex)
            w_full[idx] = _randn_complex(rng, (len(idx), 3))
            euclid = np.einsum("ni,ni->n", w_full.conj(), w_full).real
            for _ in range(2):
                for p in prev:
                    sign = jdot(p, p).real  # +1 or -1 by construction
                    coef = jdot(p, w_full) / sign
                    w_full = w_full - coef[:, None] * p
            norms = jdot(w_full, w_full).real
            good = need & (norms > 0.02 * euclid)
            vec[good] = w_full[good] / np.sqrt(norms[good, None])
            need &= ~good
        if need.any():
            raise Degenerate("could not complete a J-orthonormal frame")
        cols[slot] = vec
        prev.append(vec)
    return np.stack(cols, axis=-1)


def _haar_u2_batch(rng, n: int) -> np.ndarray:
    """Haar-distributed 2x2 unitaries (QR of Ginibre with phase-fixed R)."""
    z = _randn_complex(rng, (n, 2, 2)) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.einsum("nii->ni", r)
    return q * (d / np.abs(d))[:, None, :]


def conjugator_batch(rng, n: int, boost_scale: float = 1.2) -> np.ndarray:
    """Conjugators k1 a(r) k2: Haar compact factors around an exponential
    boost radius.  Witness search only needs a full-support distribution on
    the conjugator, and controlling the boost radius covers configurations
    with far-apart fixed points that a naive Gram-Schmidt draw starves."""
    k1 = np.zeros((n, 3, 3), dtype=complex)
    k2 = np.zeros((n, 3, 3), dtype=complex)
    k1[:, :2, :2] = _haar_u2_batch(rng, n)
    k2[:, :2, :2] = _haar_u2_batch(rng, n)
    k1[:, 2, 2] = np.exp(2j * np.pi * rng.random(n))
    k2[:, 2, 2] = np.exp(2j * np.pi * rng.random(n))
    r = np.minimum(rng.exponential(boost_scale, n), 6.0)
    boost = np.zeros((n, 3, 3), dtype=complex)
    boost[:, 0, 0] = np.cosh(r)
    boost[:, 0, 2] = np.sinh(r)
    boost[:, 2, 0] = np.sinh(r)
    boost[:, 2, 2] = np.cosh(r)
    boost[:, 1, 1] = 1.0
    return k1 @ boost @ k2


# ---------------------------------------------------------------------------
# batched classification of products
# ---------------------------------------------------------------------------


def _batch_su_trace(ms: np.ndarray) -> np.ndarray:
    det = _det3(ms)
    scale = np.exp(-np.log(det) / 3)
    return np.trace(ms, axis1=-2, axis2=-1) * scale


def _batch_goldman(z: np.ndarray) -> np.ndarray:
    az2 = (z * z.conj()).real
    return az2 * az2 - 8 * (z**3).real + 18 * az2 - 27


def _batch_angle_pairs(ms: np.ndarray):
    """Angle pairs of a stack of regular elliptic J-unitary matrices.

    Returns (a1, a2) arrays in radians plus a validity mask.  The
    negative-type eigendirection of each eigenvalue is identified from the
    adjugate of (M - lambda I), whose nonzero columns span the eigenvector.
    """
    n = ms.shape[0]
    evals = batch_eigvals_3x3(ms)
    evals = evals / np.abs(evals)    # elliptic spectra live on the unit circle
    types = np.empty((n, 3))
    ok = np.ones(n, dtype=bool)
    for k in range(3):
        shifted = ms - evals[:, k, None, None] * np.eye(3)
        adj = _adjugate3(shifted)
        weights = np.abs(adj).sum(axis=1)            # column norms
        best = np.argmax(weights, axis=1)
        v = np.take_along_axis(adj, best[:, None, None], axis=2)[..., 0]
        vnorm = np.einsum("ni,ni->n", v.conj(), v).real
        ok &= vnorm > 1e-20
        sig = (v.conj() * np.array([1, 1, -1]) * v).sum(axis=1).real
        types[:, k] = np.where(vnorm > 0, sig / np.maximum(vnorm, 1e-300), 0.0)
    kneg = np.argmin(types, axis=1)
    ok &= np.take_along_axis(types, kneg[:, None], axis=1)[:, 0] < 0
    lam_neg = np.take_along_axis(evals, kneg[:, None], axis=1)[:, 0]
    ratios = evals / lam_neg[:, None]
    args = np.mod(np.angle(ratios), 2 * np.pi)
    # drop the self-ratio slot explicitly: float division of z by itself can
    # leave a -0-sized argument that wraps to 2pi and corrupts the sort
    args[np.arange(n), kneg] = -1.0
    args_sorted = np.sort(args, axis=1)
    a2, a1 = args_sorted[:, 1], args_sorted[:, 2]
    return a1, a2, ok


def _class_distance(a1, a2, target: AnglePair):
    """Circular distance between angle pairs, radians (max over components)."""
    t1, t2 = target.a1_rad, target.a2_rad
    d1 = np.abs(a1 - t1) % (2 * np.pi)
    d2 = np.abs(a2 - t2) % (2 * np.pi)
    d1 = np.minimum(d1, 2 * np.pi - d1)
    d2 = np.minimum(d2, 2 * np.pi - d2)
    return np.maximum(d1, d2)


def sample_momentum(c1: AnglePair, c2: AnglePair, n: int, rng):
    """Classes of A B for A fixed in class c1 and B a random conjugate of c2.

    Returns a list of length n: the angle pair of (A B)^-1 when A B is
    elliptic, None when it is not (loxodromic, parabolic, or too close to
    the boundary to call).
    """
    e1 = elliptic_rep(c1).matrix
    e2 = elliptic_rep(c2).matrix
    out = []
    done = 0
    while done < n:
        batch = min(4096, n - done)
        q = random_u21_batch(rng, batch)
        qinv = _J @ np.conj(np.transpose(q, (0, 2, 1))) @ _J
        prods = e1[None] @ q @ e2[None] @ qinv
        z = _batch_su_trace(prods)
        f = _batch_goldman(z)
        inv = _J @ np.conj(np.transpose(prods, (0, 2, 1))) @ _J
        a1, a2, ok = _batch_angle_pairs(inv)
        for i in range(batch):
            if f[i] < -1e-9 and ok[i]:
                out.append(AnglePair.from_radians(float(a1[i]), float(a2[i])))
            elif abs(f[i]) <= 1e-9:
                # discriminant band: special elliptic and parabolic need the
                # slow path to be told apart
                try:
                    g = GroupElement(inv[i], J)
                    out.append(angle_pair(g) if classify(g).is_elliptic else None)
                except Exception:
                    out.append(None)
            else:
                out.append(None)
        done += batch
    return out


# ---------------------------------------------------------------------------
# reducible block witnesses on walls
# ---------------------------------------------------------------------------


def _embed_u2(a2x2, b2x2, c2x2) -> tuple:
    def emb(m):
        out = np.eye(3, dtype=complex)
        out[:2, :2] = m
        return GroupElement(out, J)

    return emb(a2x2), emb(b2x2), emb(c2x2)


def _embed_u11(ms, isolated_args, bar_pairs) -> tuple:
    """diag(e^{i a_i}, class-form U(1,1) block) per hyperbolic-wall factor.

    Each 2x2 factor is rescaled so its eigenvalues are {e^{i a_bar}, 1}
    (negative-type eigenvalue 1); the wall equation makes the 3x3 product
    come out scalar.
    """
    out = []
    for m, iso, bar_angle in zip(ms, isolated_args, bar_pairs):
        evals, evecs = np.linalg.eig(m)
        types = [
            float((evecs[:, k].conj() @ np.diag([1, -1]) @ evecs[:, k]).real)
            for k in range(2)
        ]
        kneg = int(np.argmin(types))
        block = m / evals[kneg]
        full = np.zeros((3, 3), dtype=complex)
        full[0, 0] = cmath.exp(1j * iso)
        full[1:, 1:] = block
        out.append(full)
    return tuple(out)


def _wall_witness(t: ClassTriple, wall) -> tuple | None:
    """Block witness for a triple lying on a reducible wall, or None."""
    if wall.kind == "spherical":
        try:
            a2, b2, c2 = u2_construct(t.pairs, tol=1e-7)
        except NoSolution:
            return None
        a, b, c = _embed_u2(a2, b2, c2)
        return a, b, c, Reducibility.SPHERICAL
    i, j, k = wall.ijk
    iso = (
        (t.alpha.a1_rad if i == 1 else t.alpha.a2_rad),
        (t.beta.a1_rad if j == 1 else t.beta.a2_rad),
        (t.gamma.a1_rad if k == 1 else t.gamma.a2_rad),
    )
    bar_turns = (
        (t.alpha.a2 if i == 1 else t.alpha.a1),
        (t.beta.a2 if j == 1 else t.beta.a1),
        (t.gamma.a2 if k == 1 else t.gamma.a1),
    )
    try:
        blocks = pu11_construct(tuple(float(x) for x in bar_turns), tol=1e-7)
    except (NoSolution, DegenerateAngle):
        return None
    a3, b3, c3 = _embed_u11(blocks, iso, bar_turns)
    a, b, c = (GroupElement(m, J) for m in (a3, b3, c3))
    return a, b, c, Reducibility.HYPERBOLIC


# ---------------------------------------------------------------------------
# reducibility of a found triple
# ---------------------------------------------------------------------------


def classify_reducibility(a: GroupElement, b: GroupElement, tol: float = 1e-6) -> str:
    """Common-eigenvector reducibility of the group generated by a and b.

    A common eigenvector of a and b is automatically one of c when abc is
    scalar.  Negative type means a common fixed point (spherical), positive
    type a common stable complex line (hyperbolic); a full common
    eigenbasis means the triple is simultaneously diagonalizable."""
    from horn21.linalg import eigensystem_3x3

    vecs_a = [v for _, v in eigensystem_3x3(a.matrix)]
    common = []
    for v in vecs_a:
        w = b.matrix @ v
        # w parallel to v?
        cross = w - (np.vdot(v, w) / np.vdot(v, v)) * v
        if np.linalg.norm(cross) <= tol * np.linalg.norm(w):
            common.append(v)
    if not common:
        return Reducibility.IRREDUCIBLE
    if len(common) == 3:
        return Reducibility.TOTAL
    types = [vector_type(v, a.form) for v in common]
    if any(ty is VectorType.NEGATIVE for ty in types):
        if any(ty is VectorType.POSITIVE for ty in types):
            return Reducibility.TOTAL
        return Reducibility.SPHERICAL
    return Reducibility.HYPERBOLIC


# ---------------------------------------------------------------------------
# the explicit irreducible witness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DecompFamilyWitness:
    form: HermitianForm
    r1: GroupElement
    r2: GroupElement
    r3: GroupElement
    a: GroupElement
    b: GroupElement
    c: GroupElement


def decompfamily_witness() -> DecompFamilyWitness:
    """The explicit irreducible triple with all three classes (2pi/3, pi/3).

    Three complex reflections R1, R2, R3 in SU(H) for an explicit form H of
    signature (2,1); A = R1 R2^-1, B = R2 R3^-1, C = R3 R1^-1 multiply to
    the identity by telescoping and have no common eigenvector.  The Gram
    matrix is stored transposed relative to the source convention, which
    pairs vectors through the left index; ours is <z,w> = w* H z.
    """
    r1c = math.sqrt(math.sqrt(3) - 1)
    r2c = math.sqrt(math.sqrt(3) + 1)
    r3c = r2c
    theta = 11 * math.pi / 6
    eta1 = cmath.exp(1j * theta)
    eta2 = eta1
    eta3 = cmath.exp(1j * (theta + math.pi))
    u = cmath.exp(1j * 2 * math.pi / 9)

    h = np.array(
        [
            [-1, -r3c / u, r2c * u],
            [-r3c * u, 1, -r1c / u],
            [r2c / u, -r1c * u, -1],
        ],
        dtype=complex,
    ).T
    form = HermitianForm(h)

    s1 = cmath.exp(-1j * cmath.phase(eta1) / 3)
    s2 = cmath.exp(-1j * cmath.phase(eta2) / 3)
    s3 = cmath.exp(-1j * cmath.phase(eta3) / 3)
    r1 = s1 * np.array(
        [[eta1, r3c * (eta1 - 1) * u, -r2c * (eta1 - 1) / u], [0, 1, 0], [0, 0, 1]],
        dtype=complex,
    )
    r2 = s2 * np.array(
        [[1, 0, 0], [-r3c * (eta2 - 1) / u, eta2, -r1c * (eta2 - 1) * u], [0, 0, 1]],
        dtype=complex,
    )
    r3 = s3 * np.array(
        [[1, 0, 0], [0, 1, 0], [-r2c * (eta3 - 1) * u, r1c * (eta3 - 1) / u, eta3]],
        dtype=complex,
    )
    a = r1 @ np.linalg.inv(r2)
    b = r2 @ np.linalg.inv(r3)
    c = r3 @ np.linalg.inv(r1)
    return DecompFamilyWitness(
        form,
        GroupElement(r1, form),
        GroupElement(r2, form),
        GroupElement(r3, form),
        GroupElement(a, form),
        GroupElement(b, form),
        GroupElement(c, form),
    )


def _decompfamily_in_j() -> tuple:
    """The explicit witness transported to the canonical form J."""
    w = decompfamily_witness()
    p = congruence_to_canonical(w.form)
    pinv = np.linalg.inv(p)
    return tuple(GroupElement(pinv @ g.matrix @ p, J) for g in (w.a, w.b, w.c))


# ---------------------------------------------------------------------------
# witness search
# ---------------------------------------------------------------------------


_DECOMP_TRIPLE = None


def _conjugator_chart(q0: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Q0 exp(X(s)) over the 4-parameter subalgebra moving the fixed point:
    X has entries (1,3) = z, (2,3) = w, (3,1) = conj(z), (3,2) = conj(w)."""
    from scipy.linalg import expm

    z = complex(s[0], s[1])
    w = complex(s[2], s[3])
    x = np.array(
        [[0, 0, z], [0, 0, w], [z.conjugate(), w.conjugate(), 0]], dtype=complex
    )
    return q0 @ expm(x)


def _polish_directions():
    dirs = [row.copy() for row in np.eye(4)]
    for i in range(4):
        for j in range(i + 1, 4):
            for sj in (1.0, -1.0):
                d = np.zeros(4)
                d[i], d[j] = 1.0, sj
                dirs.append(d / math.sqrt(2))
    return dirs


_POLISH_DIRS = _polish_directions()


def _polish(e1, e2, q0, target: AnglePair, goal: float, max_evals: int = 6000):
    """Coordinate descent over the conjugator chart from the best candidate.

    The chart is re-centered after every accepted step (exp-coordinates
    distort away from their base point), the sweep includes diagonal
    direction pairs, and the objective is the smooth L2 class distance:
    the max-metric has V-shaped valleys that stall axis-aligned descent.
    """
    t1r, t2r = target.a1_rad, target.a2_rad

    def err_of(q):
        m = e1 @ q @ e2 @ (_J @ q.conj().T @ _J)
        if _batch_goldman(_batch_su_trace(m[None]))[0] >= 0:
            return math.inf
        minv = _J @ m.conj().T @ _J
        a1, a2, ok = _batch_angle_pairs(minv[None])
        if not ok[0]:
            return math.inf
        d1 = abs(float(a1[0]) - t1r) % (2 * math.pi)
        d2 = abs(float(a2[0]) - t2r) % (2 * math.pi)
        return math.hypot(min(d1, 2 * math.pi - d1), min(d2, 2 * math.pi - d2))

    q = q0
    best = err_of(q)
    step = 0.25
    evals = 0
    while best > goal and evals < max_evals and step > 1e-11:
        improved = False
        for d in _POLISH_DIRS:
            for sign in (+1.0, -1.0):
                trial = _conjugator_chart(q, sign * step * d)
                e = err_of(trial)
                evals += 1
                if e < best:
                    best, q = e, trial
                    improved = True
        if not improved:
            step /= 2
    return q, best


def find_witness(t: ClassTriple, cfg: SamplerConfig = SamplerConfig()) -> WitnessTriple:
    """A witness triple (A, B, C) with A B C scalar and classes within
    cfg.tol of t, or `WitnessNotFound` after the budget is exhausted.

    Cascade: the known irreducible triple at (2pi/3, pi/3)^3; a U(2) block
    on an active spherical wall; a U(1) x U(1,1) block on an active
    hyperbolic wall; otherwise the Monte-Carlo sweep with polish.
    """
    global _DECOMP_TRIPLE
    known = ClassTriple.symmetric(AnglePair.from_radians(2 * math.pi / 3, math.pi / 3))
    if all(p.close_to(q, cfg.tol) for p, q in zip(t.pairs, known.pairs)):
        if _DECOMP_TRIPLE is None:
            _DECOMP_TRIPLE = _decompfamily_in_j()
        a, b, c = _DECOMP_TRIPLE
        return _package(a, b, c, Reducibility.IRREDUCIBLE, 0.0)

    wall_tol = max(cfg.tol, 1e-9)
    for wall, _ in active_walls(t, wall_tol):
        built = _wall_witness(t, wall)
        if built is not None:
            a, b, c, red = built
            return _package(a, b, c, red, 0.0)

    return _monte_carlo_witness(t, cfg)


def _package(a, b, c, red, err) -> WitnessTriple:
    prod = a.matrix @ b.matrix @ c.matrix
    lam = complex(np.trace(prod) / 3)
    lam = lam / abs(lam)
    layer = layer_product(a, b, c)
    return WitnessTriple(a, b, c, lam, layer, red, err)


def _monte_carlo_witness(t: ClassTriple, cfg: SamplerConfig) -> WitnessTriple:
    rng = np.random.default_rng(cfg.seed)
    e1 = elliptic_rep(t.alpha).matrix
    e2 = elliptic_rep(t.beta).matrix
    target = t.gamma
    accept_band = max(cfg.tol, 0.35)
    goal = cfg.tol / 10
    seen = 0
    best_dist = math.inf
    while seen < cfg.budget:
        batch = min(cfg.batch, cfg.budget - seen)
        q = conjugator_batch(rng, batch)
        qinv = _J @ np.conj(np.transpose(q, (0, 2, 1))) @ _J
        prods = e1[None] @ q @ e2[None] @ qinv
        seen += batch
        f = _batch_goldman(_batch_su_trace(prods))
        inv = _J @ np.conj(np.transpose(prods, (0, 2, 1))) @ _J
        a1, a2, ok = _batch_angle_pairs(inv)
        dist = _class_distance(a1, a2, target)
        dist = np.where(ok & (f < -1e-12), dist, np.inf)
        k = int(np.argmin(dist))
        if dist[k] < best_dist:
            best_dist = float(dist[k])
        if dist[k] <= accept_band:
            q_star, err = _polish(e1, e2, q[k], target, goal)
            if err <= cfg.tol:
                b = GroupElement(q_star @ e2 @ _J @ q_star.conj().T @ _J, J)
                a = GroupElement(e1, J)
                c = (a @ b).inverse()
                red = classify_reducibility(a, b)
                return _package(a, b, c, red, err)
    raise WitnessNotFound(seen, best_dist)


# ---------------------------------------------------------------------------
# grid verification
# ---------------------------------------------------------------------------


def verify_grid(slice_spec, grid_n: int, cfg: SamplerConfig, separation: float = 0.05) -> dict:
    """Polytope prediction vs witness search over a grid in a slice.

    Grid points closer than `separation` (radians) to any reducible wall
    are skipped.  The report is deterministic for a fixed seed and config:
    each point searches with an independent seed substream.  Disagreements
    of either kind (predicted member without a witness, predicted
    non-member with one) are collected and must be empty.
    """
    from horn21.render import slice_triple

    points = []
    for iy in range(1, grid_n + 1):
        for ix in range(1, grid_n + 1):
            x = 2 * math.pi * ix / (grid_n + 1)
            y = 2 * math.pi * iy / (grid_n + 1)
            if y >= x:
                continue
            t = slice_triple(slice_spec, x, y)
            if not t.is_interior:
                continue
            if active_walls(t, separation):
                continue
            points.append(((ix, iy), t))

    results = []
    disagreements = []
    witnesses_found = 0
    members_predicted = 0
    for n, ((ix, iy), t) in enumerate(points):
        report = polytope_member(t)
        sub_seed = np.random.SeedSequence((cfg.seed, n)).generate_state(1)[0]
        sub_cfg = SamplerConfig(seed=int(sub_seed), budget=cfg.budget, tol=cfg.tol, batch=cfg.batch)
        entry = {
            "grid_index": [ix, iy],
            "triple": t.to_json(),
            "predicted_member": report.member,
            "layers": sorted(l.value for l in report.layers),
        }
        if report.member:
            members_predicted += 1
        try:
            witness = find_witness(t, sub_cfg)
            entry["witness"] = {
                "found": True,
                "layer": witness.layer.value,
                "reducibility": witness.reducibility,
                "class_error": witness.class_error,
            }
            witnesses_found += 1
            if not report.member:
                disagreements.append(entry)
        except WitnessNotFound as missing:
            entry["witness"] = {
                "found": False,
                "samples": missing.samples,
                "min_class_distance": missing.min_class_distance,
            }
            if report.member:
                disagreements.append(entry)
        results.append(entry)

    return {
        "slice": str(slice_spec),
        "grid_n": grid_n,
        "separation": separation,
        "seed": cfg.seed,
        "budget": cfg.budget,
        "tol": cfg.tol,
        "points": len(points),
        "predictions": results,
        "members_predicted": members_predicted,
        "witnesses_found": witnesses_found,
        "disagreements": disagreements,
    }
