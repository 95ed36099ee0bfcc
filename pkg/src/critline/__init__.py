"""critline: numerics for critical-line zero proportions.

Zeta and Dirichlet L evaluation with analytic continuation, Hardy Z zero
scans, Gauss sums and characters, mollified second moments, the Levinson
constant and its kappa lower bound, and a derivative-free optimizer over
the shaping polynomials.
"""

from .arithmetic import (
    FactorSieve,
    chebyshev_psi,
    divisors,
    euler_phi,
    get_sieve,
    mobius,
    von_mangoldt,
)
from .dirichlet import (
    DirichletCharacter,
    enumerate_characters,
    epsilon_factor,
    gauss_sum,
    induced_primitive,
    l_function,
    theta_nu,
    xi_completed_l,
)
from .errors import (
    AccuracyError,
    ConditioningError,
    ConfigError,
    ConstraintError,
    CritlineError,
    DomainError,
    PoleError,
    SieveRangeError,
)
from .levinson import (
    LevinsonParams,
    PublishedTuple,
    ShiftedParams,
    apply_q_operators,
    c_constant_exact,
    c_constant_quadrature,
    discrepancy_note,
    exp_monomial_integral,
    kappa_lower_bound,
    published_tuples,
    shifted_c,
)
from .mollifier import (
    MollifierSpec,
    Polynomial,
    WuCoefficientSpec,
    b_polynomial,
    psi_mollifier,
    v_smoothed_zeta,
    wu_coefficient_table,
    wu_coefficients,
)
from .moment import MomentReport, SmoothWeight, mollified_moment_numeric, smooth_weight, w_hat_zero
from .optimizer import OptimizationReport, SearchSpace, grid_scan_r, optimize_kappa
from .special import (
    additive_character,
    complex_gamma,
    log_gamma,
    lower_incomplete_gamma,
    reciprocal_gamma,
    upper_incomplete_gamma,
)
from .zeta import (
    AfeParams,
    ZeroScanReport,
    afe_pair,
    afe_v_weight,
    afe_x_factor,
    count_critical_zeros,
    hardy_z,
    hardy_z_line,
    xi_completed,
    zero_count_estimate,
    zeta,
    zeta_derivative,
    zeta_line,
)

__version__ = "0.1.0"
