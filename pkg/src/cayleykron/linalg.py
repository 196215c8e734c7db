"""Dense complex linear algebra used by the rest of the package.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Ring
operations (sums, products, adjoints, norms) come straight from numpy; the
routines here are the structured products, the commutation permutation, a
cyclic Jacobi eigensolver for Hermitian matrices, Gauss-Jordan inversion
with partial pivoting, and spectral functions built on the eigensolver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .errors import (
    DimensionError,
    NoConvergence,
    NotHermitian,
    ParseError,
    Singular,
)

MAX_SWEEPS = 30
CLUSTER_FLOOR = 1e-12

# Irrational mixing weights for the commuting pencil H + t K of a normal matrix.
_PENCIL_WEIGHTS = (0.6180339887498949, -1.3247179572447460, 2.414213562373095)


@dataclass(frozen=True)
class Tolerances:
    """Numeric comparison thresholds.

    tol_eq
        relative threshold for matrix equality.
    tol_cluster
        width (relative to ``max(1, spectral radius)``) for merging
        eigenvalues when counting distinct ones.
    tol_conv
        Jacobi stopping threshold on the largest off-diagonal entry,
        relative to the Frobenius norm.
    """

    tol_eq: float = 1e-9
    tol_cluster: float = 1e-8
    tol_conv: float = 1e-13

    def __post_init__(self):
        for name in ("tol_eq", "tol_cluster", "tol_conv"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be finite and positive, got {value!r}")
        if self.tol_conv > self.tol_eq:
            raise ValueError("tol_conv must not exceed tol_eq")

    @classmethod
    def scaled(cls, tol_eq=None, tol_cluster=None, tol_conv=None) -> "Tolerances":
        """Defaults scaled so that ``tol_eq`` takes the given value.

        Explicit ``tol_cluster`` / ``tol_conv`` override the scaled ones.
        """
        base = cls()
        if tol_eq is not None:
            factor = tol_eq / base.tol_eq
            base = cls(tol_eq, base.tol_cluster * factor, base.tol_conv * factor)
        overrides = {}
        if tol_cluster is not None:
            overrides["tol_cluster"] = tol_cluster
        if tol_conv is not None:
            overrides["tol_conv"] = tol_conv
        return replace(base, **overrides) if overrides else base

    def cluster_width(self, radius: float) -> float:
        return max(self.tol_cluster * max(1.0, radius), CLUSTER_FLOOR)

    def as_dict(self) -> dict:
        return {"tol_eq": self.tol_eq, "tol_cluster": self.tol_cluster, "tol_conv": self.tol_conv}


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class Spectrum:
    """Ascending real eigenvalues with the matching orthonormal eigenvectors
    stored column-wise."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def distinct(self, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
        return cluster_values(self.eigenvalues, tol)


def as_matrix(x) -> np.ndarray:
    """Convert ``x`` to a finite 2-d complex128 array (scalars become 1x1)."""
    a = np.array(x, dtype=np.complex128)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise DimensionError(f"expected a non-empty 2-d matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ParseError("matrix has non-finite entries")
    return a


def _square(a: np.ndarray, what="matrix") -> np.ndarray:
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"{what} must be square, got shape {a.shape}")
    return a


def adjoint(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def max_norm(a) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def frobenius(a) -> float:
    return float(np.linalg.norm(a))


def rel_scale(a) -> float:
    return max(1.0, max_norm(a))


def is_hermitian(a, tol: Tolerances = DEFAULT_TOL) -> bool:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        return False
    return max_norm(a - adjoint(a)) <= tol.tol_eq * rel_scale(a)


def check_hermitian(a, tol: Tolerances = DEFAULT_TOL, name="matrix") -> np.ndarray:
    a = _square(as_matrix(a), name)
    dev = max_norm(a - adjoint(a))
    if dev > tol.tol_eq * rel_scale(a):
        raise NotHermitian(f"{name} is not Hermitian (max |A - A*| = {dev:.3e})")
    return a


def kron(a, b) -> np.ndarray:
    """Kronecker product: block (j, k) of the result is ``a[j, k] * b``."""
    a, b = as_matrix(a), as_matrix(b)
    m, n = a.shape
    p, q = b.shape
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(m * p, n * q)


def kron_all(mats) -> np.ndarray:
    mats = list(mats)
    if not mats:
        raise DimensionError("need at least one matrix")
    out = as_matrix(mats[0])
    for m in mats[1:]:
        out = kron(out, m)
    return out


def direct_sum(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    out = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]), dtype=np.complex128)
    out[: a.shape[0], : a.shape[1]] = a
    out[a.shape[0]:, a.shape[1]:] = b
    return out


def star_product(a, b) -> np.ndarray:
    """Place the corners of the 2x2 ``a`` around the square block ``b``."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != (2, 2):
        raise DimensionError(f"first star factor must be 2x2, got {a.shape}")
    _square(b, "second star factor")
    n = b.shape[0]
    out = np.zeros((n + 2, n + 2), dtype=np.complex128)
    out[0, 0], out[0, -1] = a[0, 0], a[0, 1]
    out[-1, 0], out[-1, -1] = a[1, 0], a[1, 1]
    out[1:-1, 1:-1] = b
    return out


def star_permutation(n: int) -> np.ndarray:
    """Permutation P with ``P @ star_product(A, B) @ P.T == direct_sum(A, B)``
    for ``B`` of size n: row order (first, last, middle block)."""
    order = [0, n + 1, *range(1, n + 1)]
    p = np.zeros((n + 2, n + 2), dtype=np.complex128)
    p[np.arange(n + 2), order] = 1
    return p


def commutation_matrix(m: int, n: int) -> np.ndarray:
    """Permutation P with ``P @ kron(A, B) @ P.T == kron(B, A)`` for A m x m,
    B n x n."""
    if m < 1 or n < 1:
        raise DimensionError("commutation matrix dimensions must be positive")
    p = np.zeros((m * n, m * n), dtype=np.complex128)
    for i in range(m):
        for k in range(n):
            p[k * m + i, i * n + k] = 1
    return p


def hermitian_eig(a, tol: Tolerances = DEFAULT_TOL, max_sweeps: int = MAX_SWEEPS) -> Spectrum:
    """Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi
    rotations.

    Each rotation first strips the phase of the pivot entry, then applies the
    real symmetric 2x2 rotation that zeroes it. Sweeps run row by row over the
    strict upper triangle until the largest off-diagonal magnitude is at most
    ``tol_conv`` times the Frobenius norm.
    """
    a = check_hermitian(a, tol)
    n = a.shape[0]
    w = 0.5 * (a + adjoint(a))
    v = np.eye(n, dtype=np.complex128)
    threshold = tol.tol_conv * frobenius(w)
    iu = np.triu_indices(n, 1)

    sweep = 0
    while True:
        off = np.max(np.abs(w[iu])) if n > 1 else 0.0
        if off <= threshold:
            break
        if sweep >= max_sweeps:
            raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps (off={off:.3e})")
        sweep += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = w[p, q]
                r = abs(apq)
                if r <= threshold:
                    continue
                ph = (apq / r).conjugate()
                theta = (w[q, q].real - w[p, p].real) / (2.0 * r)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # G = [[c, s], [-s*ph, c*ph]] acting on columns (p, q)
                g10, g11 = -s * ph, c * ph
                for m in (w, v):
                    cp = m[:, p].copy()
                    cq = m[:, q]
                    m[:, p] = c * cp + g10 * cq
                    m[:, q] = s * cp + g11 * cq
                rp = w[p, :].copy()
                rq = w[q, :]
                w[p, :] = c * rp + g10.conjugate() * rq
                w[q, :] = s * rp + g11.conjugate() * rq
                w[p, q] = w[q, p] = 0.0
                w[p, p] = w[p, p].real
                w[q, q] = w[q, q].real

    lam = np.real(np.diag(w)).copy()
    order = np.argsort(lam, kind="stable")
    return Spectrum(lam[order], v[:, order])


def cluster_values(values, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Merge sorted real values closer than the cluster width; returns the
    cluster means in ascending order."""
    vals = np.sort(np.asarray(values, dtype=float))
    if vals.size == 0:
        return vals
    width = tol.cluster_width(float(np.max(np.abs(vals))))
    groups = [[vals[0]]]
    for x in vals[1:]:
        if x - groups[-1][-1] <= width:
            groups[-1].append(x)
        else:
            groups.append([x])
    return np.array([sum(g) / len(g) for g in groups])


def distinct_eigenvalues(a, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    return hermitian_eig(a, tol).distinct(tol)


def inverse(a, tol: Tolerances = DEFAULT_TOL, dtype=np.complex128) -> np.ndarray:
    """Gauss-Jordan inversion with partial (row) pivoting.

    ``dtype`` sets the working precision; pass ``np.clongdouble`` for
    extended precision on inputs already held at that width.
    """
    a = np.asarray(a, dtype=dtype) if dtype != np.complex128 else as_matrix(a)
    a = _square(a)
    n = a.shape[0]
    floor = tol.tol_eq * max_norm(a)
    aug = np.hstack([a, np.eye(n, dtype=dtype)])
    for k in range(n):
        piv = k + int(np.argmax(np.abs(aug[k:, k])))
        if abs(aug[piv, k]) <= floor:
            raise Singular(f"pivot {abs(aug[piv, k]):.3e} at column {k} below {floor:.3e}")
        if piv != k:
            aug[[k, piv]] = aug[[piv, k]]
        aug[k, k:] /= aug[k, k]
        col = aug[:, k].copy()
        col[k] = 0
        aug[:, k:] -= np.outer(col, aug[k, k:])
    return aug[:, n:]


def pivot_magnitudes(a) -> np.ndarray:
    """Pivot magnitudes of LU elimination with partial pivoting."""
    a = _square(as_matrix(a)).copy()
    n = a.shape[0]
    pivots = np.zeros(n)
    for k in range(n):
        piv = k + int(np.argmax(np.abs(a[k:, k])))
        pivots[k] = abs(a[piv, k])
        if pivots[k] == 0:
            continue
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
        a[k + 1:, k] /= a[k, k]
        a[k + 1:, k + 1:] -= np.outer(a[k + 1:, k], a[k, k + 1:])
    return pivots


def spectral_fn(a, phi: Callable, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """``V diag(phi(lambda)) V*`` for Hermitian ``a``; ``phi`` is applied to
    each eigenvalue separately."""
    spec = hermitian_eig(a, tol)
    vals = np.array([phi(float(x)) for x in spec.eigenvalues], dtype=np.complex128)
    v = spec.eigenvectors
    return (v * vals) @ adjoint(v)


def is_unitary(u, tol: Tolerances = DEFAULT_TOL) -> bool:
    u = as_matrix(u)
    if u.shape[0] != u.shape[1]:
        return False
    return max_norm(adjoint(u) @ u - np.eye(u.shape[0])) <= tol.tol_eq


def is_normal(u, tol: Tolerances = DEFAULT_TOL) -> bool:
    u = _square(as_matrix(u))
    uh = adjoint(u)
    return max_norm(u @ uh - uh @ u) <= tol.tol_eq * rel_scale(u) ** 2


def normal_eigenvalues(u, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Eigenvalues of a normal matrix through its Hermitian parts.

    ``u = H + iK`` with commuting Hermitian H, K; an eigenbasis of the
    pencil ``H + tK`` for generic real t diagonalizes ``u``. Several weights
    are tried and the one leaving the smallest off-diagonal residue wins.
    """
    u = _square(as_matrix(u))
    uh = adjoint(u)
    h = 0.5 * (u + uh)
    k = -0.5j * (u - uh)
    bound = tol.tol_eq * rel_scale(u)
    best = None
    for t in _PENCIL_WEIGHTS:
        v = hermitian_eig(h + t * k, tol).eigenvectors
        d = adjoint(v) @ u @ v
        resid = max_norm(d - np.diag(np.diag(d)))
        if best is None or resid < best[0]:
            best = (resid, np.diag(d).copy())
        if resid <= bound:
            break
    return best[1]


def has_unit_eigenvalue(u, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Whether 1 is (within ``tol_cluster``) an eigenvalue of ``u``.

    Normal inputs (every unitary) go through :func:`normal_eigenvalues`;
    anything else falls back to the smallest LU pivot of ``u - I``.
    """
    u = _square(as_matrix(u))
    if is_normal(u, tol):
        return bool(np.min(np.abs(normal_eigenvalues(u, tol) - 1)) <= tol.tol_cluster)
    shifted = u - np.eye(u.shape[0])
    return bool(np.min(pivot_magnitudes(shifted)) <= tol.tol_cluster * rel_scale(shifted))
