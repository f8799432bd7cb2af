"""Prime pairs (p, p**k + 2r): local root counts, Euler-product constants,
pair counts and mean-value experiments."""

from .constants import (
    EulerProductEstimate,
    UndefinedRatioError,
    bh_constant,
    c_constant,
    c_over_gamma,
    gamma_constant,
    hl_constant,
    is_reducible,
    twin_prime_constant,
)
from .counting import CountRecord, count_pairs, li, pair_primes, table_report, theta
from .meanvalue import (
    MeanValueReport,
    SievingKernel,
    cubic_shape,
    hl_partial_sum,
    kernel_area,
    kernel_area_quadrature,
    kernel_eval,
    mean_gamma,
    mean_S,
    residual_R,
    s_m_deviation,
    subsequence_mean,
)
from .primes import PrimeTable, RepresentationError, is_prime, pow_mod, primality, sieve_primes
from .residues import (
    CubicClass,
    LocalData,
    OffsetPolynomial,
    PairFamily,
    big_n_count,
    cubic_classify,
    legendre_symbol,
    nu_count,
    three_primes_below,
)

__version__ = "0.1.0"
