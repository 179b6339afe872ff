# onebit/guardrails/__init__.py

from onebit.guardrails.checks import (
    CheckResult,
    ValidationReport,
    BaseCheck,
    BussgangOrthogonalityCheck,
    ArcsineLawCheck,
    DualityPowerCheck,
    WishartMomentCheck,
    LogRatioCheck,
    default_checks,
    run_checks,
    correlated_gaussian,
    paired_correlation_matrix,
    random_covariance,
)

__all__ = [
    "CheckResult",
    "ValidationReport",
    "BaseCheck",
    "BussgangOrthogonalityCheck",
    "ArcsineLawCheck",
    "DualityPowerCheck",
    "WishartMomentCheck",
    "LogRatioCheck",
    "default_checks",
    "run_checks",
    "correlated_gaussian",
    "paired_correlation_matrix",
    "random_covariance",
]
