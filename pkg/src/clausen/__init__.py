"""Closed forms and verified numerics for unit-argument generalized
hypergeometric sums and Schlömilch-type Bessel series."""

from .bessel_sums import (BesselSumParams, ExpansionResult, a_coeff, b_coeff,
                          cal_d_coeff, delta_n, delta_n_at_1_closed, eq24_3f2,
                          expansion_equal, expansion_unequal, f_m,
                          psi_removal_identity, s_direct, upsilon, upsilon_hat)
from .closed_form import (LimitPolicy, Theorem1Params, d_coeff,
                          eval_identity_lhs, eval_identity_rhs, miller_paris,
                          special_case, theorem1)
from .errors import (ClausenError, DivergentError, DomainError,
                     OperationCancelled, ParameterPoleError, PoleError,
                     RangeError, RemovableSingularityError)
from .hypergeom import (EvalResult, SeriesConfig, gauss_sum_2f1_unit, sum_2f1,
                        sum_3f2)
from .special_fns import (EULER_GAMMA, bessel_j, cgamma, digamma,
                          gen_binomial, log_cgamma, pochhammer, rgamma, zeta)
from .verify import (ComplexRegion, GridSpec, VerificationRecord,
                     format_complex, format_float, parse_complex, parse_table,
                     richardson_limit, run_bessel_checks, run_suite,
                     summarize, theorem1_oracle, unit_series_budget,
                     write_report)

__version__ = "0.1.0"

__all__ = [
    "BesselSumParams", "ClausenError", "ComplexRegion", "DivergentError",
    "DomainError", "EULER_GAMMA", "EvalResult", "ExpansionResult", "GridSpec",
    "LimitPolicy", "OperationCancelled", "ParameterPoleError", "PoleError",
    "RangeError", "RemovableSingularityError", "SeriesConfig",
    "Theorem1Params", "VerificationRecord", "a_coeff", "b_coeff",
    "bessel_j", "cal_d_coeff", "cgamma", "d_coeff", "delta_n",
    "delta_n_at_1_closed", "digamma", "eq24_3f2", "eval_identity_lhs",
    "eval_identity_rhs", "expansion_equal", "expansion_unequal", "f_m",
    "format_complex", "format_float", "gauss_sum_2f1_unit", "gen_binomial",
    "log_cgamma", "miller_paris", "parse_complex", "parse_table",
    "pochhammer", "psi_removal_identity", "rgamma", "richardson_limit",
    "run_bessel_checks", "run_suite", "s_direct", "special_case",
    "sum_2f1", "sum_3f2", "summarize", "theorem1", "theorem1_oracle",
    "unit_series_budget", "upsilon", "upsilon_hat", "write_report", "zeta",
]
