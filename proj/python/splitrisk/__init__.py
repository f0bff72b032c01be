"""Split-point estimators, their closed-form risk, and Monte Carlo experiments."""

from splitrisk._core import (
    ConfigError,
    DataError,
    Dist,
    DomainError,
    ModelViolationError,
    NumericError,
    __version__,
    completeness_witness,
    dist,
    estimate,
    fit_stump,
    load_labeled_csv,
    resample_experiment,
    risk,
    rmse_approx,
    simulate_circle,
    simulate_ecdf_transform,
    simulate_mismatch,
    simulate_parametric_transform,
    simulate_risk,
    simulate_splitting_sets,
    splitting_set_label,
)

__all__ = [
    "ConfigError",
    "DataError",
    "Dist",
    "DomainError",
    "ModelViolationError",
    "NumericError",
    "__version__",
    "completeness_witness",
    "dist",
    "estimate",
    "fit_stump",
    "load_labeled_csv",
    "resample_experiment",
    "risk",
    "rmse_approx",
    "simulate_circle",
    "simulate_ecdf_transform",
    "simulate_mismatch",
    "simulate_parametric_transform",
    "simulate_risk",
    "simulate_splitting_sets",
    "splitting_set_label",
]
