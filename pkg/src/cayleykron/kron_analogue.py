"""Kronecker sum and its Cayley-transform analogue g(A, B).

The Kronecker sum f(A, B) = A (x) I + I (x) B turns exponentials of a pair
into a Kronecker product. The map g plays the same role for the Cayley
transform: U_{g(A,B)} = U_A (x) U_B whenever U_A (x) U_B lacks eigenvalue 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .cayley import cayley, inverse_cayley, scalar_cayley
from .errors import DimensionError, OutsideDomain
from .linalg import (
    DEFAULT_TOL,
    Tolerances,
    adjoint,
    as_matrix,
    check_hermitian,
    hermitian_eig,
    inverse,
    kron,
)


@dataclass(frozen=True)
class DomainVerdict:
    in_domain: bool
    offending_pair: Optional[Tuple[complex, complex]]
    distance: float  # min |xy - 1| over eigenvalue pairs


def kron_sum(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[0] != a.shape[1] or b.shape[0] != b.shape[1]:
        raise DimensionError("Kronecker sum needs square matrices")
    return kron(a, np.eye(b.shape[0])) + kron(np.eye(a.shape[0]), b)


def nearest_unit_product(a, b, tol: Tolerances = DEFAULT_TOL):
    """Eigenvalue pair (x of U_A, y of U_B) minimizing |xy - 1|, and that
    distance."""
    x = scalar_cayley(hermitian_eig(a, tol).eigenvalues)
    y = scalar_cayley(hermitian_eig(b, tol).eigenvalues)
    dist = np.abs(np.outer(x, y) - 1)
    j, k = np.unravel_index(int(np.argmin(dist)), dist.shape)
    return (complex(x[j]), complex(y[k])), float(dist[j, k])


def in_domain(a, b, tol: Tolerances = DEFAULT_TOL) -> DomainVerdict:
    """Whether (A, B) lies in the domain of g.

    xy = 1 for x = U(a), y = U(b) exactly when a = -b, so pairs with opposite
    eigenvalues (including any two zero eigenvalues) are rejected.
    """
    a = check_hermitian(a, tol, "A")
    b = check_hermitian(b, tol, "B")
    pair, dist = nearest_unit_product(a, b, tol)
    if dist <= tol.tol_cluster:
        return DomainVerdict(False, pair, dist)
    return DomainVerdict(True, None, dist)


WIDE = np.clongdouble


def _wide_cayley(a, tol):
    a = check_hermitian(a, tol).astype(WIDE)
    eye = np.eye(a.shape[0], dtype=WIDE)
    return (a - 1j * eye) @ inverse(a + 1j * eye, tol, WIDE)


def _wide_kron_sum(a, b):
    m, n = a.shape[0], b.shape[0]
    left = a[:, None, :, None] * np.eye(n, dtype=WIDE)[None, :, None, :]
    right = np.eye(m, dtype=WIDE)[:, None, :, None] * b[None, :, None, :]
    return (left + right).reshape(m * n, m * n)


def g_map(a, b, tol: Tolerances = DEFAULT_TOL, variant: str = "primary") -> np.ndarray:
    """Hermitian G with cayley(G) = cayley(A) (x) cayley(B).

    primary:   G = i f(U_A*, -U_B)^-1 f(U_A*, U_B)
    alternate: G = i f(-U_A, U_B*)^-1 f(U_A, U_B*)
    """
    if variant not in ("primary", "alternate"):
        raise ValueError(f"unknown variant {variant!r}")
    verdict = in_domain(a, b, tol)
    if not verdict.in_domain:
        x, y = verdict.offending_pair
        raise OutsideDomain(
            f"U_A (x) U_B has eigenvalue 1 (x={x:.6g}, y={y:.6g}, |xy-1|={verdict.distance:.3e})",
            pair=verdict.offending_pair,
            distance=verdict.distance,
        )
    # f(., .) loses about cond(lhs) * |G| digits near the domain boundary,
    # so the formula is evaluated in extended precision and rounded once
    ua, ub = _wide_cayley(a, tol), _wide_cayley(b, tol)
    if variant == "primary":
        lhs, rhs = _wide_kron_sum(adjoint(ua), -ub), _wide_kron_sum(adjoint(ua), ub)
    else:
        lhs, rhs = _wide_kron_sum(-ua, adjoint(ub)), _wide_kron_sum(ua, adjoint(ub))
    g = 1j * inverse(lhs, tol, WIDE) @ rhs
    return g.astype(np.complex128)


def _g_by_inversion(a, b, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    # test oracle: invert the transform of U_A (x) U_B directly
    return inverse_cayley(kron(cayley(a, tol), cayley(b, tol)), tol)
