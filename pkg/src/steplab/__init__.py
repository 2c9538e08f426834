"""steplab: almost periodic trigonometric polynomials, windowed sup-norms,
frequency-multiplier operators, and a certified inequality test bench."""

from .core import (
    AmbiguousMatch,
    AveragingWindow,
    FREQ_MERGE_TOL,
    TermBlowup,
    TrigPolynomial,
    evaluate,
    fourier_coefficient_estimate,
    fourier_coefficient_exact,
    from_json_dict,
    is_real_valued,
    modulate,
    multiply,
    separation,
    to_json_dict,
)
from .mollifier import Mollifier, smooth_step
from .norms import (
    NormEstimate,
    NormExponent,
    SampledFunction,
    amalgam_l1_norm,
    amalgam_linf_norm,
    besicovitch_seminorm,
    exceedance_measure,
    stepanov_norm,
    window_integral,
)
from .operators import (
    FrequencyMultiplier,
    JMaxTooSmall,
    NotRealValued,
    SingularPoint,
    apply_multiplier,
    direct_convolution_oracle,
    dyadic_partial_sum,
    hilbert_identity_check,
    hilbert_pm,
    hilbert_transform,
    lp_piece,
    maximal_partial_sum,
    pv_hilbert_indicator,
    sequence_hilbert,
    sj_via_modulation,
    smoothed_maximal,
    smoothed_partial_sum,
    square_function,
)
from .quadrature import QuadratureBudgetExceeded, integrate_adaptive
from .verify import (
    CheckRecord,
    EmptyEnsemble,
    EnsembleSpec,
    InfeasibleSpec,
    SuiteConfig,
    TheoreticalConstants,
    VerificationReport,
    check_maximal_ratio,
    check_parseval_chain,
    check_square_function_ratio,
    check_vector_hilbert,
    constants,
    generate_ensemble,
    run_suite,
)

__version__ = "0.1.0"
