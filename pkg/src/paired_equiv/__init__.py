"""Equivalence testing for paired binary data with exact operating characteristics."""

from .errors import DomainError, InfeasibleCorrelationError, ZeroVarianceError
from .evaluation import (
    DecisionMap,
    SurfaceGrid,
    decision_map,
    exact_power,
    exact_size,
    mc_estimate,
    power_surface,
    region_boundary,
    size_surface,
)
from .inference import (
    ACCEPT,
    INCREASE_SAMPLE,
    MARGIN,
    MCNEMAR,
    REJECT,
    ConfidenceRegion,
    DisturbanceReport,
    PairedCounts,
    TestResult,
    confidence_region,
    disturb,
    margin_bounds,
    margin_pvalue,
    margin_test,
    mcnemar_test,
)
from .model import (
    AltParams,
    JointTable,
    MarginalParams,
    NullParams,
    joint_to_marginal,
    marginal_to_joint,
    null_discordant_prob,
    pi_bounds,
    rho_bounds,
)
from .numerics import (
    BinomialSpec,
    binom_cdf,
    binom_pmf,
    binom_sf_inclusive,
    chi2_quantile_1,
    chi2_sf_1,
    lower_bound_index,
    upper_bound_index,
)

__version__ = "0.1.0"

__all__ = [
    "ACCEPT",
    "AltParams",
    "BinomialSpec",
    "ConfidenceRegion",
    "DecisionMap",
    "DisturbanceReport",
    "DomainError",
    "INCREASE_SAMPLE",
    "InfeasibleCorrelationError",
    "JointTable",
    "MARGIN",
    "MCNEMAR",
    "MarginalParams",
    "NullParams",
    "PairedCounts",
    "REJECT",
    "SurfaceGrid",
    "TestResult",
    "ZeroVarianceError",
    "binom_cdf",
    "binom_pmf",
    "binom_sf_inclusive",
    "chi2_quantile_1",
    "chi2_sf_1",
    "confidence_region",
    "decision_map",
    "disturb",
    "exact_power",
    "exact_size",
    "joint_to_marginal",
    "lower_bound_index",
    "margin_bounds",
    "margin_pvalue",
    "margin_test",
    "marginal_to_joint",
    "mc_estimate",
    "mcnemar_test",
    "null_discordant_prob",
    "pi_bounds",
    "power_surface",
    "region_boundary",
    "rho_bounds",
    "size_surface",
    "upper_bound_index",
]
