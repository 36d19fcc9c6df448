"""Exact finite-support pmfs on the nonnegative integers: binomial thinning,
convolution, size-biasing, information functionals and stochastic orders."""

from .errors import (
    ConsistencyError,
    DeficitTooLarge,
    DegenerateSequence,
    DomainError,
    EmptyOrNegative,
    LengthMismatch,
    PreconditionFailed,
    ThinlawError,
    TooShort,
    ZeroMean,
)
from .info import (
    chi_squared,
    d_poisson,
    entropy,
    l_n,
    poisson_divergence,
    relative_entropy,
    scaled_fisher,
    total_variation,
)
from .orders import (
    ConvexTestFn,
    OrderReport,
    is_log_concave,
    is_ulc,
    leq_cx,
    leq_lc,
    leq_lc_poisson,
    leq_st,
    majorizes,
    mixed_binomial_sum,
    poisson_leq_lc,
    schur_probe,
)
from .pmf import (
    DEFAULT_TOL,
    Pmf,
    Tolerances,
    approx_eq,
    bernoulli,
    binomial,
    from_weights,
    geometric,
    linf,
    negative_binomial,
    point_mass,
    poisson,
    uniform,
)
from .results import CheckResult, check_close, check_geq, check_leq
from .transforms import (
    convolve,
    convolve_all,
    law_of_thin_numbers,
    law_of_thin_numbers_direct,
    self_convolve,
    size_bias,
    thin,
)

__version__ = "0.1.0"
