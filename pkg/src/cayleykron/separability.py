"""When is U_{A (x) B} a Kronecker product, and how to split it.

Writing A and B in their eigenbases, U_{A (x) B} has coefficients
U(a_j b_k) against the projector products x_j x_j* (x) y_k y_k*. It splits
exactly when that coefficient grid has rank one, which reduces to

    (a_p - a_r)(b_q - b_s)(a_p a_r b_q b_s - 1) = 0

for all eigenvalue quadruples: one side has a single eigenvalue, or both
have exactly two with a_1 a_2 b_1 b_2 = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .cayley import cayley, inverse_cayley, scalar_cayley
from .errors import DimensionError, NoSafePhase, NotFactorable, NotRankOne
from .linalg import (
    DEFAULT_TOL,
    Tolerances,
    as_matrix,
    check_hermitian,
    distinct_eigenvalues,
    frobenius,
    kron,
    normal_eigenvalues,
)


class Verdict(str, Enum):
    SINGLE_SPECTRUM_A = "SingleSpectrumA"
    SINGLE_SPECTRUM_B = "SingleSpectrumB"
    TWO_BY_TWO_UNIT_PRODUCT = "TwoByTwoUnitProduct"
    NOT_FACTORABLE = "NotFactorable"


@dataclass(frozen=True)
class CoefficientGrid:
    values: np.ndarray  # shape (m, n)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.ndim != 2 or not np.all(np.isfinite(vals)):
            raise ValueError("coefficient grid must be a finite 2-d array")
        object.__setattr__(self, "values", vals)

    @property
    def m(self) -> int:
        return self.values.shape[0]

    @property
    def n(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class FactorClassification:
    verdict: Verdict
    distinct_eigenvalues_a: np.ndarray
    distinct_eigenvalues_b: np.ndarray
    residual: float

    @property
    def factorable(self) -> bool:
        return self.verdict is not Verdict.NOT_FACTORABLE


def grid_rank1_check(grid, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True iff a_pq a_rs = a_ps a_rq for all p, r, q, s (rank <= 1)."""
    g = grid.values if isinstance(grid, CoefficientGrid) else np.asarray(grid, dtype=np.complex128)
    minors = np.einsum("pq,rs->pqrs", g, g) - np.einsum("ps,rq->pqrs", g, g)
    bound = tol.tol_eq * (1 + float(np.max(np.abs(g))) ** 2)
    return float(np.max(np.abs(minors))) <= bound


def spectral_grid(a, b, tol: Tolerances = DEFAULT_TOL) -> CoefficientGrid:
    """Grid U(a_j b_k) over the distinct eigenvalues of A and B."""
    da = distinct_eigenvalues(a, tol)
    db = distinct_eigenvalues(b, tol)
    return CoefficientGrid(scalar_cayley(np.outer(da, db)))


def _check_kron_shape(mat, m, n):
    if m < 1 or n < 1 or mat.shape != (m * n, m * n):
        raise DimensionError(f"matrix of shape {mat.shape} is not ({m}*{n}) x ({m}*{n})")


def kron_rearrange(mat, m: int, n: int) -> np.ndarray:
    """Reshape an mn x mn matrix to m^2 x n^2 so that kron(C, D) maps to the
    outer product of the row-major vectorizations of C and D."""
    mat = as_matrix(mat)
    _check_kron_shape(mat, m, n)
    return mat.reshape(m, n, m, n).transpose(0, 2, 1, 3).reshape(m * m, n * n)


def kron_unrearrange(r, m: int, n: int) -> np.ndarray:
    r = as_matrix(r)
    if r.shape != (m * m, n * n):
        raise DimensionError(f"rearranged matrix of shape {r.shape} is not {m * m} x {n * n}")
    return r.reshape(m, m, n, n).transpose(0, 2, 1, 3).reshape(m * n, m * n)


def kron_factorize(mat, m: int, n: int, tol: Tolerances = DEFAULT_TOL):
    """Split ``mat`` as kron(C, D) with C m x m and D n x n.

    The rank-one factor is read off the largest-magnitude pivot of the
    rearrangement. C is scaled to Frobenius norm sqrt(m) and its largest
    entry made real positive; D absorbs the reciprocal scalars. Raises
    NotRankOne with the max deviation from the pivot prediction.
    """
    mat = as_matrix(mat)
    r = kron_rearrange(mat, m, n)
    p, q = np.unravel_index(int(np.argmax(np.abs(r))), r.shape)
    pivot = r[p, q]
    if pivot == 0:
        return np.zeros((m, m), dtype=np.complex128), np.zeros((n, n), dtype=np.complex128)
    col = r[:, q]
    row = r[p, :] / pivot
    residual = float(np.max(np.abs(r - np.outer(col, row))))
    if residual > tol.tol_eq * frobenius(mat):
        raise NotRankOne(f"not a Kronecker product (residual {residual:.3e})", residual=residual)
    c = col.reshape(m, m).copy()
    d = row.reshape(n, n).copy()
    scale = math.sqrt(m) / frobenius(c)
    c *= scale
    d /= scale
    lead = c.flat[int(np.argmax(np.abs(c)))]
    phase = lead / abs(lead)
    return c / phase, d * phase


def _quadruple_residual(da, db) -> float:
    ap, ar = np.meshgrid(da, da, indexing="ij")
    bq, bs = np.meshgrid(db, db, indexing="ij")
    da_diff = (ap - ar)[:, :, None, None]
    db_diff = (bq - bs)[None, None, :, :]
    prod = (ap * ar)[:, :, None, None] * (bq * bs)[None, None, :, :]
    return float(np.max(np.abs(da_diff * db_diff * (prod - 1))))


def theorem1_classify(a, b, tol: Tolerances = DEFAULT_TOL) -> FactorClassification:
    """Decide whether U_{A (x) B} splits as a Kronecker product from the
    spectra of A and B alone."""
    a = check_hermitian(a, tol, "A")
    b = check_hermitian(b, tol, "B")
    da = distinct_eigenvalues(a, tol)
    db = distinct_eigenvalues(b, tol)
    residual = _quadruple_residual(da, db)
    if len(da) == 1:
        verdict = Verdict.SINGLE_SPECTRUM_A
    elif len(db) == 1:
        verdict = Verdict.SINGLE_SPECTRUM_B
    elif len(da) == 2 and len(db) == 2 and abs(da[0] * da[1] * db[0] * db[1] - 1) <= tol.tol_cluster:
        verdict = Verdict.TWO_BY_TWO_UNIT_PRODUCT
    else:
        verdict = Verdict.NOT_FACTORABLE
    return FactorClassification(verdict, da, db, residual)


def safe_phase(angles, min_gap: float) -> float:
    """Midpoint of the largest gap between the given angles on the circle."""
    pts = np.sort(np.mod(np.asarray(angles, dtype=float), 2 * math.pi))
    if pts.size == 0:
        return 0.0
    gaps = np.diff(np.append(pts, pts[0] + 2 * math.pi))
    j = int(np.argmax(gaps))
    if gaps[j] < min_gap:
        raise NoSafePhase(f"largest angular gap {gaps[j]:.3e} below {min_gap:.3e}")
    theta = pts[j] + gaps[j] / 2
    return float(np.angle(np.exp(1j * theta)))


def theorem2_hermitian_factor(a, b, tol: Tolerances = DEFAULT_TOL):
    """Hermitian C, D with U_{A (x) B} = U_C (x) U_D.

    U_{A (x) B} is split into unitary C', D'; the pair is then rotated by
    opposite phases e^{i theta}, e^{-i theta} so that neither has eigenvalue 1,
    and both are pulled back through the inverse transform.
    """
    a = check_hermitian(a, tol, "A")
    b = check_hermitian(b, tol, "B")
    cls = theorem1_classify(a, b, tol)
    if not cls.factorable:
        raise NotFactorable("U_{A(x)B} is not a Kronecker product")
    m, n = a.shape[0], b.shape[0]
    try:
        cp, dp = kron_factorize(cayley(kron(a, b), tol), m, n, tol)
    except NotRankOne as exc:
        raise NotFactorable(str(exc)) from exc
    forbidden = np.concatenate(
        [-np.angle(normal_eigenvalues(cp, tol)), np.angle(normal_eigenvalues(dp, tol))]
    )
    theta = safe_phase(forbidden, 10 * tol.tol_cluster)
    c = inverse_cayley(np.exp(1j * theta) * cp, tol)
    d = inverse_cayley(np.exp(-1j * theta) * dp, tol)
    return c, d
