"""qstarlike: numerics for q-starlikeness orders and coefficient bounds.

Library surface:

* :mod:`qstarlike.qcore`    -- q-bracket, q-Pochhammer, q-difference operator
* :mod:`qstarlike.hypq`     -- basic hypergeometric series, contiguous ratio, 2F1
* :mod:`qstarlike.starlike` -- order of q-starlikeness (closed form + grid oracle),
  class membership tests
* :mod:`qstarlike.bounds`   -- coefficient recurrence, growth/Fekete-Szego/Hankel
  bounds, extremal kernels, brute-force searches
* :mod:`qstarlike.harness`  -- seeded verification suites emitting certificates
* :mod:`qstarlike.cli`      -- command-line front end (``qstarlike``)

Hot loops run on a compiled extension when available; set
``QSTARLIKE_PURE_PYTHON=1`` before import to force the NumPy fallback.
"""

from ._kernels import backend_name
from .bounds import (
    BoundCertificate,
    BruteForceGrid,
    CaratheodoryMixture,
    CaratheodoryTriple,
    FeketeSzegoBound,
    SearchResult,
    a234_from_p,
    bieberbach_bound,
    coeffs_from_p,
    extremal_F_coeffs,
    extremal_G_coeffs,
    fekete_szego_bound,
    fs_brute_force,
    functional_fs,
    functional_h22,
    hankel2_bound,
    hankel_brute_force,
    hankel_domain_max,
    log_strip_p_coeffs,
    p2_functional_bound,
    p2_functional_check,
    p123_from_triple,
    triple_from_p123,
)
from .errors import ConsistencyError, ConvergenceError, DomainError, NearZeroDenominator
from .hypq import (
    PhiParams,
    gauss_2f1,
    phi_coefficient,
    phi_eval,
    phi_limit_coefficient,
    phi_ratio_shifted,
    shifted_phi_series,
)
from .qcore import (
    NormalizedSeries,
    q_bracket,
    q_derivative_at,
    q_derivative_series,
    q_pochhammer,
    require_q,
)
from .starlike import (
    GridSpec,
    Membership,
    SigmaReport,
    boundary_trace,
    classical_order_grid,
    corollary_order,
    in_sq_alpha,
    in_sq_star_alpha,
    sigma_q_grid,
    sigma_q_grid_located,
    sigma_q_phi,
    sigma_q_phi_with_grid,
    starlike_ratio,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "backend_name",
    # errors
    "ConsistencyError",
    "ConvergenceError",
    "DomainError",
    "NearZeroDenominator",
    # qcore
    "NormalizedSeries",
    "q_bracket",
    "q_derivative_at",
    "q_derivative_series",
    "q_pochhammer",
    "require_q",
    # hypq
    "PhiParams",
    "gauss_2f1",
    "phi_coefficient",
    "phi_eval",
    "phi_limit_coefficient",
    "phi_ratio_shifted",
    "shifted_phi_series",
    # starlike
    "GridSpec",
    "Membership",
    "SigmaReport",
    "boundary_trace",
    "classical_order_grid",
    "corollary_order",
    "in_sq_alpha",
    "in_sq_star_alpha",
    "sigma_q_grid",
    "sigma_q_grid_located",
    "sigma_q_phi",
    "sigma_q_phi_with_grid",
    "starlike_ratio",
    # bounds
    "BoundCertificate",
    "BruteForceGrid",
    "CaratheodoryMixture",
    "CaratheodoryTriple",
    "FeketeSzegoBound",
    "SearchResult",
    "a234_from_p",
    "bieberbach_bound",
    "coeffs_from_p",
    "extremal_F_coeffs",
    "extremal_G_coeffs",
    "fekete_szego_bound",
    "fs_brute_force",
    "functional_fs",
    "functional_h22",
    "hankel2_bound",
    "hankel_brute_force",
    "hankel_domain_max",
    "log_strip_p_coeffs",
    "p2_functional_bound",
    "p2_functional_check",
    "p123_from_triple",
    "triple_from_p123",
]
