"""Numerical engine for gap bounds between ordinates of zeta zeros."""

from .errors import (
    DomainError,
    NoCertificateError,
    ResourceError,
    ToleranceNotMet,
    ZeroGapsError,
    ZeroTableError,
)
from .numerics import OptResult, QuadSpec, exp_integral_e1, golden_max, integrate, integrate_semi_infinite
from .hfun import HParams, TableRow, build_table, find_large_gap_c, find_small_gap_c, h_minus, h_plus
from .bounds import (
    BoundScheme,
    ThetaResult,
    certified_h_plus_upper,
    chord_slopes,
    optimize_theta,
    optimize_vartheta,
    theta_objective,
    vartheta_objective,
)
from .asymptotic import asymptotic_integral, asymptotic_objective, h_plus_large_r, optimize_B, tail_E
from .arithmetic import DiscreteParams, d_ell, g_kernel, h_discrete, liouville, sieve_tables, von_mangoldt
from .zeros import GapReport, ZeroTable, counting_check, gap_report, load_zeros, normalized_gap

__version__ = "0.1.0"
