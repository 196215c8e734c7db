import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cayleykron.cayley import cayley, scalar_cayley
from cayleykron.errors import DimensionCap, NotHermitian, NoRealCompanion, ZeroEigenvalue
from cayleykron.linalg import kron
from cayleykron.predicates import (
    companion_eigenvalues,
    e13_residual,
    identity_power_equal,
    multipartite_direct,
    multipartite_sufficient,
    theorem3_check,
)
from cayleykron.sampling import (
    companion_single,
    hermitian_with_spectrum,
    random_hermitian,
    t3_positive,
)

SQRT2 = math.sqrt(2)


def test_pair_residual_examples():
    assert abs(e13_residual(-1, 1 + SQRT2)) < 1e-15
    assert e13_residual(0, 7.5) == -1
    assert e13_residual(1, 1) == -2


@given(st.floats(-50, 50), st.floats(-50, 50))
def test_pair_residual_is_the_scalar_product_gap(a, b):
    # U(a) U(b) = U(ab)  <=>  ab(1 - a - b) = 1; the gap is 2i * residual / denominators
    gap = scalar_cayley(a) * scalar_cayley(b) - scalar_cayley(a * b)
    expected = 2j * e13_residual(a, b) / ((a + 1j) * (b + 1j) * (a * b + 1j))
    assert abs(gap - expected) <= 1e-12 * max(1.0, abs(expected))


# -- companion eigenvalues -------------------------------------------------------

def test_companion_examples():
    assert companion_eigenvalues(-1) == pytest.approx((1 - SQRT2, 1 + SQRT2))
    with pytest.raises(NoRealCompanion):
        companion_eigenvalues(1)
    with pytest.raises(ZeroEigenvalue):
        companion_eigenvalues(0)
    roots = companion_eigenvalues(4)
    assert len(roots) == 2
    assert all(abs(e13_residual(4, b)) <= 1e-12 for b in roots)


def test_companion_double_root():
    # a(1 - a)^2 = 4 has one real root; bisect for it
    lo, hi = 2.0, 3.0
    for _ in range(200):
        mid = (lo + hi) / 2
        lo, hi = (mid, hi) if mid * (1 - mid) ** 2 < 4 else (lo, mid)
    roots = companion_eigenvalues(lo)
    assert len(roots) == 1
    assert abs(e13_residual(lo, roots[0])) < 1e-9


def test_companion_matches_numpy_roots(rng):
    for _ in range(200):
        a = float(rng.uniform(-10, 10))
        if abs(a) < 1e-3:
            continue
        ref = np.roots([a, -a * (1 - a), 1])
        real = np.sort(ref[np.abs(ref.imag) < 1e-9].real)
        try:
            roots = companion_eigenvalues(a)
        except NoRealCompanion:
            assert real.size == 0
            continue
        assert np.allclose(roots, real, rtol=1e-9)
        for b in roots:
            assert abs(a * b * b - a * (1 - a) * b + 1) <= 1e-12 * max(1, abs(a) * b * b, abs(a * (1 - a) * b))


# -- bipartite identity --------------------------------------------------------------

@pytest.mark.parametrize("b", [(1 + SQRT2) * np.eye(2), (1 - SQRT2) * np.eye(2),
                               np.diag([1 + SQRT2, 1 - SQRT2]), np.diag([1 - SQRT2, 1 + SQRT2])])
def test_product_identity_listed_positives(b, tol):
    v = theorem3_check(-np.eye(2), b, tol)
    assert v.holds and v.case == "SingleA"
    assert v.direct_residual <= 1e-9


def test_product_identity_swapped_roles(tol):
    v = theorem3_check(np.diag([1 + SQRT2, 1 - SQRT2]), -np.eye(3), tol)
    assert v.holds and v.case == "SingleB"


def test_product_identity_zero_and_identity(rng, tol):
    assert not theorem3_check(np.zeros((2, 2)), random_hermitian(rng, 2), tol).holds
    assert not theorem3_check(np.eye(2), random_hermitian(rng, 3), tol).holds


def test_product_identity_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        theorem3_check([[0, 1], [0, 0]], [[1]])


def test_product_identity_iff_agreement(rng, tol):
    # theorem3_check raises if the spectral and direct routes ever disagree
    holds = 0
    for _ in range(200):
        if rng.random() < 0.3:
            a, b = t3_positive(rng)
        else:
            a, b = random_hermitian(rng, int(rng.integers(1, 6))), random_hermitian(rng, int(rng.integers(1, 6)))
        v = theorem3_check(a, b, tol)
        direct = np.abs(cayley(kron(a, b), tol) - kron(cayley(a, tol), cayley(b, tol))).max()
        assert v.holds == (direct <= tol.tol_eq)
        holds += v.holds
    assert holds > 30


def test_product_identity_two_by_two_unit_product_never_holds(rng, tol):
    for _ in range(100):
        t, s, u = rng.choice([-1, 1], 3) * rng.uniform(0.5, 2, 3)
        a = hermitian_with_spectrum(rng, [t, s])
        b = hermitian_with_spectrum(rng, [u, 1 / (t * s * u)])
        assert not theorem3_check(a, b, tol).holds


def test_product_identity_same_matrix_never_holds(rng, tol):
    for _ in range(50):
        a = random_hermitian(rng, int(rng.integers(1, 5)), 3.0)
        assert not theorem3_check(a, a, tol).holds
    # scalar multiples of the identity are the only candidates; scan them
    for a in np.linspace(-5, 5, 101):
        assert not theorem3_check(a * np.eye(2), a * np.eye(2), tol).holds


def test_product_identity_identity_factor_never_holds(rng, tol):
    for _ in range(50):
        m = int(rng.integers(1, 4))
        b = random_hermitian(rng, int(rng.integers(1, 4)), 3.0)
        assert not theorem3_check(np.eye(m), b, tol).holds
        assert not theorem3_check(b, np.eye(m), tol).holds


# -- multipartite --------------------------------------------------------------------

def test_multipartite_identity_powers():
    five = [np.eye(2)] * 5
    assert multipartite_direct(five).holds
    assert not multipartite_direct([np.eye(2)] * 2).holds
    # no bipartite split of identity powers satisfies the pair identity
    assert not multipartite_sufficient(five)


def test_multipartite_constructed_triple(tol):
    b1 = companion_eigenvalues(-(1 + SQRT2))[0]
    triple = [b1 * np.eye(2), -np.eye(2), (1 + SQRT2) * np.eye(2)]
    direct = multipartite_direct(triple, tol)
    assert direct.holds and direct.residual <= tol.tol_eq
    assert multipartite_sufficient(triple, tol)
    # the left chain, link by link, through the pairwise check
    assert theorem3_check(triple[1], triple[2], tol).holds
    assert theorem3_check(triple[0], kron(triple[1], triple[2]), tol).holds


def test_multipartite_two_factors_reduce_to_pair(rng, tol):
    for _ in range(60):
        a, b = t3_positive(rng, (1, 3)) if rng.random() < 0.5 else (random_hermitian(rng, 2), random_hermitian(rng, 2))
        holds = theorem3_check(a, b, tol).holds
        assert multipartite_sufficient([a, b], tol) == holds
        assert multipartite_direct([a, b], tol).holds == holds


def test_multipartite_sufficient_implies_direct(rng, tol):
    certified = 0
    for _ in range(80):
        a = companion_single(rng)
        roots = companion_eigenvalues(a, tol)
        kind = rng.integers(3)
        if kind == 0:
            # left chain: c I against (a I (x) r I), then a I against r I
            r = float(rng.choice(roots))
            try:
                c = float(rng.choice(companion_eigenvalues(a * r, tol)))
            except NoRealCompanion:
                c = float(rng.uniform(-2, 2))
            mats = [c * np.eye(2), a * np.eye(2), r * np.eye(int(rng.integers(1, 3)))]
        elif kind == 1:
            mats = [random_hermitian(rng, 2) for _ in range(3)]
        else:
            mats = [a * np.eye(2), hermitian_with_spectrum(rng, rng.choice(roots, 2)), np.eye(1)]
        suff = multipartite_sufficient(mats, tol)
        if suff:
            certified += 1
            assert multipartite_direct(mats, tol).holds
    assert certified > 0


def test_multipartite_dimension_cap():
    with pytest.raises(DimensionCap):
        multipartite_direct([np.eye(2)] * 13)
    with pytest.raises(DimensionCap):
        multipartite_sufficient([np.eye(4)] * 2, cap=8)


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
def test_identity_power_parity(m, k):
    assert identity_power_equal(m, k) == (k % 4 == 1)


def test_identity_power_large_k():
    assert identity_power_equal(2, 9) and not identity_power_equal(2, 14)
    assert identity_power_equal(3, 4001)
