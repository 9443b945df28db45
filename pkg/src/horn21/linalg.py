"""Complex 3x3 linear algebra over a signature-(2,1) Hermitian form.

Scalar eigen-decomposition uses the closed-form Cardano solution of the
characteristic cubic followed by a Newton polish of each root; a batched
(vectorized) eigenvalue path backs the Monte-Carlo oracle.  The general QR
machinery of LAPACK is deliberately avoided for the 3x3-only scope.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

# Default tolerances; all overridable per call.
EPS_NUM = 1e-10        # scalar equality
EPS_UNITARY = 1e-9     # form preservation M*HM = H and |det|=1
EPS_EIG = 1e-9         # eigen residual, relative to ||M||
EPS_TYPE = 1e-9        # vector type sign, relative to ||v||^2
REPEATED_ROOT_TOL = 1e-7   # roots closer than this share an eigenspace

_OMEGA = np.exp(2j * np.pi / 3)


class ZeroVector(ValueError):
    pass


class SingularMatrix(ValueError):
    pass


class NonConvergence(RuntimeError):
    """Eigen residual target unreachable; the matrix is near-defective."""


class NotUnitary(ValueError):
    pass


class VectorType(enum.Enum):
    NEGATIVE = "negative"
    NULL = "null"
    POSITIVE = "positive"


@dataclass(frozen=True)
class HermitianForm:
    """A conjugate-symmetric 3x3 form; the canonical instance is J = diag(1,1,-1)."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (3, 3):
            raise ValueError(f"expected a 3x3 matrix, got {m.shape}")
        # store exactly conjugate-symmetric entries
        m = (m + m.conj().T) / 2
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def pairing(self, v, w):
        return hermitian_pairing(v, w, self)


J = HermitianForm(np.diag([1.0, 1.0, -1.0]))


@dataclass(frozen=True, eq=False)
class GroupElement:
    """A 3x3 matrix together with the Hermitian form it preserves."""

    matrix: np.ndarray
    form: HermitianForm = field(default=J)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (3, 3):
            raise ValueError(f"expected a 3x3 matrix, got {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def validate(self, tol: float = EPS_UNITARY) -> "GroupElement":
        h = self.form.matrix
        scale = max(np.abs(self.matrix).max(), 1.0)
        residual = np.abs(self.matrix.conj().T @ h @ self.matrix - h).max()
        if residual > tol * scale * scale:
            raise NotUnitary(f"form preservation residual {residual:.3e}")
        det = np.linalg.det(self.matrix)
        if abs(abs(det) - 1) > tol * scale**3:
            raise NotUnitary(f"determinant modulus {abs(det):.6f} != 1")
        return self

    @property
    def det(self) -> complex:
        return complex(np.linalg.det(self.matrix))

    def inverse(self) -> "GroupElement":
        # for a form-preserving M, M^-1 = H^-1 M* H; fall back to solve otherwise
        h = self.form.matrix
        return GroupElement(np.linalg.solve(h, self.matrix.conj().T @ h), self.form)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        if self.form is not other.form and not np.allclose(
            self.form.matrix, other.form.matrix
        ):
            raise ValueError("cannot compose elements preserving different forms")
        return GroupElement(self.matrix @ other.matrix, self.form)

    def to_json(self) -> list:
        return matrix_to_json(self.matrix)


def matrix_to_json(m: np.ndarray) -> list:
    return [[{"re": float(z.real), "im": float(z.imag)} for z in row] for row in np.asarray(m)]


def matrix_from_json(rows) -> np.ndarray:
    return np.array([[complex(c["re"], c["im"]) for c in row] for row in rows])


def hermitian_pairing(v, w, h: HermitianForm = J) -> complex:
    """<v, w> = w* H v; conjugate-symmetric, linear in v."""
    v = np.asarray(v, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return complex(w.conj() @ h.matrix @ v)


def vector_type(v, h: HermitianForm = J, tol: float = EPS_TYPE) -> VectorType:
    """Bucket the sign of <v,v> against tol * ||v||^2."""
    v = np.asarray(v, dtype=complex)
    norm2 = float(np.vdot(v, v).real)
    if norm2 == 0.0:
        raise ZeroVector("vector type of the zero vector is undefined")
    s = hermitian_pairing(v, v, h).real
    if s < -tol * norm2:
        return VectorType.NEGATIVE
    if s > tol * norm2:
        return VectorType.POSITIVE
    return VectorType.NULL


def signature(h: HermitianForm, tol: float = EPS_TYPE) -> tuple[int, int, int]:
    """(positive, negative, zero) eigenvalue counts of the form."""
    eigs = np.linalg.eigvalsh(h.matrix)
    scale = max(np.abs(eigs).max(), 1.0)
    p = int(np.sum(eigs > tol * scale))
    n = int(np.sum(eigs < -tol * scale))
    return p, n, 3 - p - n


def congruence_to_canonical(h: HermitianForm) -> np.ndarray:
    """A matrix P with P* H P = J, for forms of signature (2,1).

    Transports SU(H) elements to J-unitary ones via M -> P^-1 M P.
    """
    if signature(h) != (2, 1, 0):
        raise ValueError("form does not have signature (2,1)")
    eigs, vecs = np.linalg.eigh(h.matrix)
    order = np.argsort(-eigs)  # positive, positive, negative
    eigs, vecs = eigs[order], vecs[:, order]
    return vecs @ np.diag(1 / np.sqrt(np.abs(eigs)))


# ---------------------------------------------------------------------------
# closed-form eigenvalues
# ---------------------------------------------------------------------------


def _charpoly_coeffs(m: np.ndarray):
    """p(x) = x^3 - c2 x^2 + c1 x - c0 for a 3x3 matrix (batched over leading axes)."""
    c2 = np.trace(m, axis1=-2, axis2=-1)
    m2 = m @ m
    c1 = (c2 * c2 - np.trace(m2, axis1=-2, axis2=-1)) / 2
    c0 = _det3(m)
    return c2, c1, c0


def _det3(m: np.ndarray):
    return (
        m[..., 0, 0] * (m[..., 1, 1] * m[..., 2, 2] - m[..., 1, 2] * m[..., 2, 1])
        - m[..., 0, 1] * (m[..., 1, 0] * m[..., 2, 2] - m[..., 1, 2] * m[..., 2, 0])
        + m[..., 0, 2] * (m[..., 1, 0] * m[..., 2, 1] - m[..., 1, 1] * m[..., 2, 0])
    )


def _adjugate3(m: np.ndarray) -> np.ndarray:
    out = np.empty_like(m)
    out[..., 0, 0] = m[..., 1, 1] * m[..., 2, 2] - m[..., 1, 2] * m[..., 2, 1]
    out[..., 0, 1] = m[..., 0, 2] * m[..., 2, 1] - m[..., 0, 1] * m[..., 2, 2]
    out[..., 0, 2] = m[..., 0, 1] * m[..., 1, 2] - m[..., 0, 2] * m[..., 1, 1]
    out[..., 1, 0] = m[..., 1, 2] * m[..., 2, 0] - m[..., 1, 0] * m[..., 2, 2]
    out[..., 1, 1] = m[..., 0, 0] * m[..., 2, 2] - m[..., 0, 2] * m[..., 2, 0]
    out[..., 1, 2] = m[..., 0, 2] * m[..., 1, 0] - m[..., 0, 0] * m[..., 1, 2]
    out[..., 2, 0] = m[..., 1, 0] * m[..., 2, 1] - m[..., 1, 1] * m[..., 2, 0]
    out[..., 2, 1] = m[..., 0, 1] * m[..., 2, 0] - m[..., 0, 0] * m[..., 2, 1]
    out[..., 2, 2] = m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]
    return out


def cubic_roots(c2, c1, c0):
    """Roots of x^3 - c2 x^2 + c1 x - c0 by Cardano, batched, complex.

    Returns an array of shape (..., 3).  Roots are raw Cardano output;
    callers polish with `_newton_polish` where accuracy matters.
    """
    c2 = np.asarray(c2, dtype=complex)
    c1 = np.asarray(c1, dtype=complex)
    c0 = np.asarray(c0, dtype=complex)
    shift = c2 / 3
    p = c1 - c2 * c2 / 3
    q = -c0 + c1 * c2 / 3 - 2 * c2**3 / 27
    # depressed cubic x^3 + p x + q = 0
    disc = (q / 2) ** 2 + (p / 3) ** 3
    sq = np.sqrt(disc)
    u3 = -q / 2 + sq
    alt = -q / 2 - sq
    # pick the larger branch for numerical stability
    use_alt = np.abs(alt) > np.abs(u3)
    u3 = np.where(use_alt, alt, u3)
    # complex cube root via exp(log/3); u3 == 0 only in the triple-root case
    u = np.where(np.abs(u3) > 0, np.exp(np.log(np.where(u3 == 0, 1, u3)) / 3), 0)
    roots = np.empty(np.broadcast(c2, c1, c0).shape + (3,), dtype=complex)
    for k in range(3):
        uk = u * _OMEGA**k
        with np.errstate(divide="ignore", invalid="ignore"):
            xk = np.where(np.abs(uk) > 0, uk - p / (3 * uk), 0)
        roots[..., k] = xk + shift
    return roots


def _newton_polish(roots, c2, c1, c0, steps: int = 14):
    # Validated steps: a plain Newton update diverges at repeated roots.
    # Convergence at a triple root is linear at rate 2/3, so the default
    # step count is sized to pull Cardano's eps^(1/3) splitting inside the
    # repeated-root clustering tolerance.
    def peval(r):
        return ((r - c2[..., None]) * r + c1[..., None]) * r - c0[..., None]

    best = np.abs(peval(roots))
    for _ in range(steps):
        p = peval(roots)
        dp = (3 * roots - 2 * c2[..., None]) * roots + c1[..., None]
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(np.abs(dp) > 0, p / dp, 0)
        candidate = roots - step
        cand_val = np.abs(peval(candidate))
        take = cand_val < best
        roots = np.where(take, candidate, roots)
        best = np.where(take, cand_val, best)
    return roots


def batch_eigvals_3x3(ms: np.ndarray) -> np.ndarray:
    """Vectorized eigenvalues of a stack of 3x3 matrices, Cardano + polish."""
    c2, c1, c0 = _charpoly_coeffs(ms)
    roots = cubic_roots(c2, c1, c0)
    return _newton_polish(roots, np.asarray(c2, complex), np.asarray(c1, complex), np.asarray(c0, complex))


def _kernel_basis(a: np.ndarray, dim: int) -> np.ndarray:
    """Orthonormal basis of the numerically smallest `dim` right-singular directions."""
    _, _, vh = np.linalg.svd(a)
    return vh.conj().T[:, 3 - dim :]


def eigensystem_3x3(m, tol: float | None = None) -> list[tuple[complex, np.ndarray]]:
    """Three eigenpairs (with multiplicity) of a 3x3 complex matrix.

    Cardano roots of the characteristic cubic, Newton-polished, eigenvectors
    from the adjugate of (M - lambda I) with an inverse-iteration fallback.
    Roots closer than `REPEATED_ROOT_TOL` are clustered and their eigenspace
    extracted as a kernel basis, so special elliptic inputs are first-class.

    Raises `NonConvergence` when the residual target cannot be met (the
    matrix is near-defective and should be treated as not diagonalizable).
    """
    m = np.asarray(getattr(m, "matrix", m), dtype=complex)
    scale = max(float(np.abs(m).max()), 1e-300)
    if tol is None:
        tol = EPS_EIG * scale
    c2, c1, c0 = _charpoly_coeffs(m)
    roots = _newton_polish(
        cubic_roots(c2, c1, c0), np.asarray(c2, complex), np.asarray(c1, complex), np.asarray(c0, complex)
    )
    roots = sorted(roots.reshape(3), key=lambda z: (z.real, z.imag))

    # cluster repeated roots; a triple root cannot be located better than
    # the cbrt(eps) resolution of the characteristic polynomial, so three
    # mutually close roots merge at that coarser scale
    triple_noise = 3e-5 * scale
    if max(abs(a - b) for a in roots for b in roots) < triple_noise:
        clusters: list[list[complex]] = [list(roots)]
    else:
        clusters = [[roots[0]]]
        for z in roots[1:]:
            placed = False
            for cl in clusters:
                if abs(z - cl[0]) < REPEATED_ROOT_TOL * scale:
                    cl.append(z)
                    placed = True
                    break
            if not placed:
                clusters.append([z])
    # Cardano is only sqrt(eps)-accurate at a repeated root; the trace
    # identity pins it down from the (quadratically converged) simple roots
    if len(clusters) == 2:
        double = max(clusters, key=len)
        simple = min(clusters, key=len)
        exact = (complex(c2) - simple[0]) / 2
        double[:] = [exact] * len(double)
    elif len(clusters) == 1:
        clusters[0][:] = [complex(c2) / 3] * 3

    pairs: list[tuple[complex, np.ndarray]] = []
    for cl in clusters:
        lam = complex(np.mean(cl))
        mult = len(cl)
        shifted = m - lam * np.eye(3)
        if mult == 1:
            adj = _adjugate3(shifted)
            k = int(np.argmax(np.abs(adj).sum(axis=0)))
            v = adj[:, k]
            if np.linalg.norm(v) < 1e-14 * scale**2:
                v = _kernel_basis(shifted, 1)[:, 0]
            v = v / np.linalg.norm(v)
            v = _inverse_iterate(m, lam, v, scale)
            pairs.append((_rayleigh(m, v), v))
        else:
            basis = _kernel_basis(shifted, mult)
            for k in range(mult):
                v = basis[:, k]
                pairs.append((lam, v / np.linalg.norm(v)))

    residual = max(np.linalg.norm(m @ v - lam * v) for lam, v in pairs)
    if residual > tol:
        raise NonConvergence(
            f"eigen residual {residual:.3e} exceeds {tol:.3e}; near-defective matrix"
        )
    return pairs


def _inverse_iterate(m, lam, v, scale):
    shifted = m - (lam + 1e-14 * scale) * np.eye(3)
    try:
        w = np.linalg.solve(shifted, v)
        n = np.linalg.norm(w)
        if np.isfinite(n) and n > 0:
            return w / n
    except np.linalg.LinAlgError:
        pass
    return v


def _rayleigh(m, v):
    return complex(np.vdot(v, m @ v) / np.vdot(v, v))


def su_normalize(m, tol: float = EPS_NUM):
    """Scale by a cube root of det(m)^-1 so the result has determinant 1.

    The scale is exp(-log(det)/3) with the principal logarithm, so its
    argument lies in [-pi/3, pi/3); at det = -1 this picks e^{-i pi/3}.
    Accepts and returns either a `GroupElement` or a bare ndarray.
    """
    mat = np.asarray(getattr(m, "matrix", m), dtype=complex)
    det = _det3(mat)
    if abs(det) < tol:
        raise SingularMatrix(f"determinant {abs(det):.3e} is numerically zero")
    scaled = mat * np.exp(-np.log(complex(det)) / 3)
    if isinstance(m, GroupElement):
        return GroupElement(scaled, m.form)
    return scaled
