"""Exact verification toolkit for totally positive (Polya frequency) sequences."""
from tpkit.kernels import IMPLEMENTATION as KERNEL_IMPLEMENTATION
from tpkit.quotients import (
    SecondQuotients,
    d_inequalities,
    hutchinson_holds,
    lemma1_chain,
    second_quotients,
    th1_audit,
)
from tpkit.realroots import (
    Polynomial,
    classify_theorem_st1,
    derivative_numerator,
    finite_multiplier_check,
    is_real_rooted_nonpositive,
    root_power_sum_identities,
    sturm_count,
)
from tpkit.seqcore import (
    AsweFinite,
    CoefficientSequence,
    Derivative,
    Explicit,
    Exponential,
    FromQuotients,
    Geometric,
    Hadamard,
    PartialTheta,
    RationalGF,
    Remainder,
    derivative_weights,
    hadamard,
    materialize,
    normalize,
    remainder,
    spec_from_json,
    spec_to_json,
)
from tpkit.theta import (
    PrecisionConfig,
    estimate_constant,
    eval_partial_sum,
    hat_x,
    lemma_bounds_report,
    sign_alternation_certificate,
    verify_th3,
    x0,
)
from tpkit.toeplitz import MinorRequest, check_tp_window, find_negative_minor, minor

__version__ = "0.1.0"
