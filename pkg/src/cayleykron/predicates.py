"""When does U_{A (x) B} equal U_A (x) U_B?

Eigenvalue by eigenvalue, U(a) U(b) = U(ab) holds iff ab(1 - a - b) = 1.
The identity for matrices therefore needs one side to be a nonzero multiple
of the identity, a I, with every eigenvalue of the other side a real root of

    a b^2 - a(1 - a) b + 1 = 0.

Everything here checks the spectral criterion and the matrix identity side
by side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import NamedTuple, Optional

import numpy as np

from .cayley import cayley
from .errors import DimensionCap, NoRealCompanion, PathDisagreement, ZeroEigenvalue
from .linalg import (
    DEFAULT_TOL,
    Tolerances,
    check_hermitian,
    cluster_values,
    distinct_eigenvalues,
    hermitian_eig,
    kron,
    kron_all,
    max_norm,
)

DIMENSION_CAP = 4096


def e13_residual(a, b):
    return a * b * (1 - a - b) - 1


def companion_eigenvalues(a: float, tol: Tolerances = DEFAULT_TOL) -> tuple:
    """Real roots b of a b^2 - a(1 - a) b + 1 = 0, ascending."""
    a = float(a)
    if abs(a) <= tol.tol_cluster:
        raise ZeroEigenvalue("a = 0 has no companion eigenvalues")
    lin = -a * (1 - a)
    disc = lin * lin - 4 * a
    if disc < -tol.tol_cluster:
        raise NoRealCompanion(f"discriminant {disc:.6g} is negative for a = {a:.6g}")
    if abs(disc) <= tol.tol_cluster:
        return ((1 - a) / 2,)
    # stable form of the quadratic formula
    q = -0.5 * (lin + math.copysign(math.sqrt(disc), lin))
    return tuple(sorted((q / a, 1 / q)))


@dataclass(frozen=True)
class T3Verdict:
    holds: bool
    case: Optional[str]  # "SingleA", "SingleB" or None
    residual: float
    direct_residual: float


class DirectResult(NamedTuple):
    holds: bool
    residual: float


def _covers(single: float, others, tol: Tolerances) -> bool:
    try:
        roots = companion_eigenvalues(single, tol)
    except (ZeroEigenvalue, NoRealCompanion):
        return False
    width = tol.cluster_width(max(max(abs(r) for r in roots), float(np.max(np.abs(others)))))
    return all(any(abs(o - r) <= width for r in roots) for o in others)


def spectral_case(da, db, tol: Tolerances = DEFAULT_TOL) -> Optional[str]:
    """Which side's single eigenvalue certifies the identity, given the
    distinct eigenvalues of both sides; None when neither does."""
    if len(da) == 1 and _covers(da[0], db, tol):
        return "SingleA"
    if len(db) == 1 and _covers(db[0], da, tol):
        return "SingleB"
    return None


def theorem3_check(a, b, tol: Tolerances = DEFAULT_TOL) -> T3Verdict:
    """Decide U_{A (x) B} = U_A (x) U_B spectrally and by direct comparison.

    Raises PathDisagreement if the two routes disagree.
    """
    a = check_hermitian(a, tol, "A")
    b = check_hermitian(b, tol, "B")
    da = distinct_eigenvalues(a, tol)
    db = distinct_eigenvalues(b, tol)
    residual = float(np.max(np.abs(e13_residual(da[:, None], db[None, :]))))
    case = spectral_case(da, db, tol)
    direct = max_norm(cayley(kron(a, b), tol) - kron(cayley(a, tol), cayley(b, tol)))
    if (case is not None) != (direct <= tol.tol_eq):
        raise PathDisagreement(
            f"spectral case {case} but direct residual {direct:.3e} (tol {tol.tol_eq:g})"
        )
    return T3Verdict(case is not None, case, residual, direct)


def _checked(mats, tol, cap):
    mats = [check_hermitian(m, tol, f"factor {j}") for j, m in enumerate(mats)]
    if not mats:
        raise ValueError("need at least one matrix")
    dim = math.prod(m.shape[0] for m in mats)
    if dim > cap:
        raise DimensionCap(f"product dimension {dim} exceeds cap {cap}")
    return mats


def multipartite_direct(mats, tol: Tolerances = DEFAULT_TOL, cap: int = DIMENSION_CAP) -> DirectResult:
    """Compare U of the full Kronecker product with the product of the U's."""
    mats = _checked(mats, tol, cap)
    lhs = cayley(kron_all(mats), tol)
    rhs = kron_all(cayley(m, tol) for m in mats)
    res = max_norm(lhs - rhs)
    return DirectResult(res <= tol.tol_eq, res)


def _product_distinct(spectra, tol):
    # eigenvalues of a Kronecker product are the products of factor eigenvalues
    vals = reduce(lambda x, y: np.outer(x, y).ravel(), spectra)
    return cluster_values(vals, tol)


def multipartite_sufficient(mats, tol: Tolerances = DEFAULT_TOL, cap: int = DIMENSION_CAP) -> bool:
    """Certify the multipartite identity through a chain of bipartite splits.

    Left chain:  A_j against A_{j+1} (x) ... (x) A_k for every j.
    Right chain: A_1 (x) ... (x) A_{j-1} against A_j for every j.
    Either chain closing implies the full identity; the converse fails
    (the five-fold power of the identity satisfies it with no valid split).
    """
    mats = _checked(mats, tol, cap)
    spectra = [hermitian_eig(m, tol).eigenvalues for m in mats]
    k = len(spectra)

    def link(left, right):
        return spectral_case(_product_distinct(left, tol), _product_distinct(right, tol), tol) is not None

    left_chain = all(link(spectra[j:j + 1], spectra[j + 1:]) for j in range(k - 1))
    right_chain = all(link(spectra[:j], spectra[j:j + 1]) for j in range(1, k))
    return left_chain or right_chain


def identity_power_equal(m: int, k: int, cap: int = DIMENSION_CAP) -> bool:
    """Whether U of the k-fold Kronecker power of I_m equals the k-fold power
    of U_{I_m} = -i I_m, i.e. (-i)^k = -i, i.e. k = 1 mod 4.

    Computed directly as well whenever m^k fits under ``cap``.
    """
    if m < 1 or k < 1:
        raise ValueError("m and k must be positive")
    scalar = k % 4 == 1
    if m ** k <= cap:
        direct = multipartite_direct([np.eye(m)] * k, cap=cap).holds
        if direct != scalar:
            raise PathDisagreement(f"direct {direct} vs scalar {scalar} for m={m}, k={k}")
    return scalar
