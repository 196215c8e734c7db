"""Cayley transform of Hermitian matrices and its inverse."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotUnitary, NotUnitModulus, UnitEigenvalue
from .linalg import (
    DEFAULT_TOL,
    Tolerances,
    adjoint,
    as_matrix,
    check_hermitian,
    has_unit_eigenvalue,
    inverse,
    is_unitary,
    max_norm,
    rel_scale,
    spectral_fn,
)

PHASE_GRID = 360


def scalar_cayley(lam):
    """(lam - i) / (lam + i); maps the real line into the unit circle minus 1.

    Works elementwise on numpy arrays.
    """
    return (lam - 1j) / (lam + 1j)


def scalar_inverse_cayley(u, tol: Tolerances = DEFAULT_TOL) -> float:
    u = complex(u)
    if abs(u - 1) <= tol.tol_cluster:
        raise UnitEigenvalue(f"{u} is within {tol.tol_cluster:g} of 1")
    if abs(abs(u) - 1) > tol.tol_eq:
        raise NotUnitModulus(f"|{u}| = {abs(u)!r} is off the unit circle")
    return (1j * (1 + u) / (1 - u)).real


def cayley(a, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """U_A = (A - iI)(A + iI)^-1 for Hermitian A."""
    a = check_hermitian(a, tol)
    eye = np.eye(a.shape[0])
    minus = a - 1j * eye
    resolvent = inverse(a + 1j * eye, tol)
    u = minus @ resolvent
    # the two factors commute, so the order is immaterial
    assert max_norm(u - resolvent @ minus) <= tol.tol_eq * rel_scale(u)
    return u


def cayley_spectral(a, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Same transform through the eigen-decomposition of A."""
    return spectral_fn(a, scalar_cayley, tol)


def inverse_cayley(u, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """A = i(I + U)(I - U)^-1 for unitary U without eigenvalue 1.

    The Hermitian part of the computed product is returned.
    """
    u = as_matrix(u)
    if not is_unitary(u, tol):
        raise NotUnitary("inverse Cayley transform needs a unitary matrix")
    if has_unit_eigenvalue(u, tol):
        raise UnitEigenvalue("1 is an eigenvalue; the inverse transform is undefined")
    eye = np.eye(u.shape[0])
    x = 1j * (eye + u) @ inverse(eye - u, tol)
    return 0.5 * (x + adjoint(x))


@dataclass(frozen=True)
class CayleyPair:
    hermitian: np.ndarray
    unitary: np.ndarray

    @classmethod
    def from_hermitian(cls, a, tol: Tolerances = DEFAULT_TOL) -> "CayleyPair":
        a = check_hermitian(a, tol)
        return cls(a, cayley(a, tol))

    @classmethod
    def from_unitary(cls, u, tol: Tolerances = DEFAULT_TOL) -> "CayleyPair":
        u = as_matrix(u)
        return cls(inverse_cayley(u, tol), u)

    def check(self, tol: Tolerances = DEFAULT_TOL) -> bool:
        return (
            is_unitary(self.unitary, tol)
            and not has_unit_eigenvalue(self.unitary, tol)
            and max_norm(cayley(self.hermitian, tol) - self.unitary) <= tol.tol_eq
        )


def pauli_hermitian(a, b, c, d) -> np.ndarray:
    """[[a+d, b-ic], [b+ic, a-d]]: the general 2x2 Hermitian matrix."""
    return np.array([[a + d, b - 1j * c], [b + 1j * c, a - d]], dtype=np.complex128)


def phase_coincidence(a, b, c, d, tol: Tolerances = DEFAULT_TOL):
    """Phase phi with U_H = exp(i phi) H for H = pauli_hermitian(a, b, c, d),
    or None.

    Only phi = -pi/2 can occur, and it does exactly when both eigenvalues
    a +- sqrt(b^2 + c^2 + d^2) lie in {-1, +1}. The analytic candidate is
    tried first; a uniform grid over the circle backs it up.
    """
    h = pauli_hermitian(a, b, c, d)
    u = cayley(h, tol)
    bound = tol.tol_eq * rel_scale(h)
    grid = (-math.pi + 2 * math.pi * k / PHASE_GRID for k in range(PHASE_GRID))
    for phi in (-math.pi / 2, *grid):
        if max_norm(u - np.exp(1j * phi) * h) <= bound:
            return phi
    return None
