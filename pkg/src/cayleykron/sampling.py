"""Random test ensembles: Hermitian matrices, unitaries, and constructed
pairs that satisfy the factorization and product identities."""

from __future__ import annotations

import numpy as np

from .kron_analogue import nearest_unit_product
from .linalg import DEFAULT_TOL, Tolerances
from .predicates import companion_eigenvalues


def random_hermitian(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    """Entries uniform in [-scale, scale], Hermitized."""
    x = rng.uniform(-scale, scale, (n, n)) + 1j * rng.uniform(-scale, scale, (n, n))
    return 0.5 * (x + x.conj().T)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def hermitian_with_spectrum(rng: np.random.Generator, values) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    v = random_unitary(rng, values.size)
    h = (v * values) @ v.conj().T
    return 0.5 * (h + h.conj().T)


def spectrum_from(rng: np.random.Generator, distinct, size: int) -> np.ndarray:
    """``size`` values drawn from ``distinct``, each value used at least once."""
    distinct = list(distinct)
    if size < len(distinct):
        raise ValueError("size too small to contain every distinct value")
    extra = rng.choice(len(distinct), size - len(distinct))
    vals = np.array(distinct + [distinct[j] for j in extra], dtype=float)
    return rng.permutation(vals)


def in_domain_pair(rng: np.random.Generator, sizes=(1, 4), tol: Tolerances = DEFAULT_TOL, margin: float = 100.0):
    """Random Hermitian pair kept only if min |xy - 1| exceeds
    ``margin * tol_cluster``."""
    while True:
        m, n = rng.integers(sizes[0], sizes[1] + 1, 2)
        a, b = random_hermitian(rng, m), random_hermitian(rng, n)
        _, dist = nearest_unit_product(a, b, tol)
        if dist > margin * tol.tol_cluster:
            return a, b


def _moderate(rng, lo=0.5, hi=2.0) -> float:
    return float(rng.choice([-1.0, 1.0]) * rng.uniform(lo, hi))


def case_c_pair(rng: np.random.Generator, sizes=(2, 4)):
    """A with spectrum {t, s}, B with spectrum {u, 1/(tsu)}."""
    t, s, u = _moderate(rng), _moderate(rng), _moderate(rng)
    w = 1.0 / (t * s * u)
    m, n = rng.integers(sizes[0], sizes[1] + 1, 2)
    a = hermitian_with_spectrum(rng, spectrum_from(rng, [t, s], m))
    b = hermitian_with_spectrum(rng, spectrum_from(rng, [u, w], n))
    return a, b


def companion_single(rng: np.random.Generator) -> float:
    """A nonzero a with two real companion eigenvalues."""
    if rng.random() < 0.5:
        return float(rng.uniform(-3.0, -0.2))
    return float(rng.uniform(2.5, 4.0))


def t3_positive(rng: np.random.Generator, sizes=(1, 5)):
    """A pair satisfying U_{A (x) B} = U_A (x) U_B: a I against a matrix whose
    eigenvalues are companions of a. Roles are swapped at random."""
    a = companion_single(rng)
    roots = companion_eigenvalues(a)
    m, n = rng.integers(sizes[0], sizes[1] + 1, 2)
    k = int(rng.integers(1, min(2, n) + 1))
    chosen = list(rng.choice(roots, k, replace=False))
    single = a * np.eye(m, dtype=np.complex128)
    other = hermitian_with_spectrum(rng, spectrum_from(rng, chosen, n))
    if rng.random() < 0.5:
        return single, other
    return other, single
