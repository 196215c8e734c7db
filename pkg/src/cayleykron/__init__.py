"""Cayley transforms of Hermitian matrices and their interplay with the
Kronecker product."""

from .cayley import (
    CayleyPair,
    cayley,
    cayley_spectral,
    inverse_cayley,
    phase_coincidence,
    scalar_cayley,
    scalar_inverse_cayley,
)
from .errors import *  # noqa: F401,F403
from .kron_analogue import DomainVerdict, g_map, in_domain, kron_sum
from .linalg import (
    DEFAULT_TOL,
    Spectrum,
    Tolerances,
    commutation_matrix,
    direct_sum,
    has_unit_eigenvalue,
    hermitian_eig,
    inverse,
    is_unitary,
    kron,
    spectral_fn,
    star_permutation,
    star_product,
)
from .predicates import (
    T3Verdict,
    companion_eigenvalues,
    e13_residual,
    identity_power_equal,
    multipartite_direct,
    multipartite_sufficient,
    theorem3_check,
)
from .separability import (
    CoefficientGrid,
    FactorClassification,
    Verdict,
    grid_rank1_check,
    kron_factorize,
    kron_rearrange,
    kron_unrearrange,
    theorem1_classify,
    theorem2_hermitian_factor,
)

__version__ = "0.1.0"
