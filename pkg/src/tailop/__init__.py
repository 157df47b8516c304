"""Operator-scaled tail dependence of copulas.

Power-matrix scalings u**A generalize the scalar ray u*w used in classical
tail dependence: each coordinate shrinks at its own rate, so dependence
hidden below the dominant marginal order becomes visible at order one.
The package provides

- power matrices and scaling cones (``matpow``),
- regularly varying and exponential margins (``margins``),
- closed-form copula families from shock models (``copulas``),
- tail-limit oracles and numerical estimators (``taildep``),
- the intensity-measure correspondence and its verifiers (``mrv``),
- seeded Monte Carlo cross-checks (``simulate``),
- a command-line driver (``tailop``, see ``cli``).
"""

__version__ = "0.1.0"

from .errors import (
    DimensionTooLargeError,
    DomainError,
    MarginMismatchError,
    NonSymmetricError,
    NotPositiveDefiniteError,
    TailopError,
    TooFewTailPointsError,
)
from .matpow import (
    EigenSystem,
    TailIndexMatrix,
    apply_scaling,
    eigendecompose,
    in_scaling_cone,
    matrix_power,
    matrix_power_series,
)
from .margins import (
    ExponentialMargin,
    RegularlyVaryingMargin,
    bisection_inverse,
    margin_from_survival,
    mo_exponential_margin,
    pareto4_margin,
    pareto_margin,
    rv_index_diagnostic,
)
from .copulas import (
    Copula,
    IndependenceCopula,
    MOComplementCopula,
    MOParams,
    MOSurvivalCopula,
    Pareto4SurvivalCopula,
    independence_copula,
    joint_survival,
    mo_complement_copula,
    mo_survival_copula,
    pareto4_survival_copula,
    survival_copula_of,
)
from .taildep import (
    LimitGrid,
    TailEstimate,
    estimate_tail_function,
    estimate_tail_order,
    homogeneity_residual,
    mo_bL_operator,
    mo_bL_standard,
    mo_matrix_index,
    pareto4_lower_exponent,
)
from .mrv import (
    ExponentFunction,
    IntensityMeasure,
    NonStandardRVModel,
    PointCheck,
    VerificationReport,
    exponent_from_intensity,
    intensity_from_copula,
    mo_pareto_intensity_oracle,
    orthant_consistency_defect,
    pareto4_intensity_oracle,
    scaling_defect,
    verify_nonstandard_rv,
)
from .simulate import (
    SampleBatch,
    empirical_tail_function,
    ks_uniform_statistic,
    sample_mo,
    sample_pareto4,
    to_copula_scale,
)

__all__ = [
    "__version__",
    "TailopError", "DomainError", "NonSymmetricError", "NotPositiveDefiniteError",
    "DimensionTooLargeError", "MarginMismatchError", "TooFewTailPointsError",
    "EigenSystem", "TailIndexMatrix", "eigendecompose", "matrix_power",
    "matrix_power_series", "apply_scaling", "in_scaling_cone",
    "RegularlyVaryingMargin", "ExponentialMargin", "pareto_margin",
    "pareto4_margin", "mo_exponential_margin", "margin_from_survival",
    "bisection_inverse", "rv_index_diagnostic",
    "Copula", "MOParams", "MOSurvivalCopula", "MOComplementCopula",
    "Pareto4SurvivalCopula", "IndependenceCopula", "mo_survival_copula",
    "mo_complement_copula", "pareto4_survival_copula", "independence_copula",
    "survival_copula_of", "joint_survival",
    "LimitGrid", "TailEstimate", "mo_bL_standard", "mo_bL_operator",
    "mo_matrix_index", "pareto4_lower_exponent", "homogeneity_residual",
    "estimate_tail_function", "estimate_tail_order",
    "IntensityMeasure", "NonStandardRVModel", "ExponentFunction",
    "intensity_from_copula", "exponent_from_intensity",
    "mo_pareto_intensity_oracle", "pareto4_intensity_oracle",
    "scaling_defect", "orthant_consistency_defect", "verify_nonstandard_rv",
    "PointCheck", "VerificationReport",
    "SampleBatch", "sample_mo", "sample_pareto4", "to_copula_scale",
    "empirical_tail_function", "ks_uniform_statistic",
]
