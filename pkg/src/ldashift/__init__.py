"""Fisher LDA under label shift: exact risk, asymptotic theory, sweeps."""

from .core import (
    AtomAtZero,
    CurveTooShort,
    GaussianMixtureModel,
    InvalidDelta,
    InvalidGamma,
    InvalidLambda,
    InvalidPrior,
    LdaShiftError,
    LinearClassifier,
    OnKnot,
    RegimeConfig,
    TooFewSamples,
    std_normal_cdf,
    validate_config,
)
from .estimation import (
    Dataset,
    bayes_classifier,
    fit_lda,
    fit_regularized_lda,
    generate_dataset,
)
from .risk import RiskReport, conditional_risk, empirical_risk
from .asymptotics import (
    AsymptoticRisk,
    Regime,
    asymptotic_risk,
    mp_stieltjes,
    mp_stieltjes_deriv,
    theorem1_balanced_risk,
    theorem1_risk,
    theorem2_risk,
)
from .phase import (
    Behavior,
    ImbalanceCurve,
    Phase,
    PhaseKnots,
    behavior_signature,
    classify_phase,
    derivative_at_balance,
    imbalance_curve,
    phase_knots,
    regularized_monotonicity_check,
    sign_pattern,
)
from .harness import (
    FLAG_NEAR_INTERPOLATION,
    NEAR_INTERPOLATION_BAND,
    CurveRow,
    CurveTable,
    SweepMode,
    SweepSpec,
    derive_seed,
    make_default_model,
    run_sweep,
    trace_functional_check,
    wishart_trace_check,
)

__version__ = "0.1.0"
