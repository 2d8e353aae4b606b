"""Robust classification calculus for two-component Gaussian mixtures."""

from ._core import (
    AdvInstance,
    BallSpec,
    Dataset,
    DeltaReport,
    FitResult,
    GaussianMixture,
    IoError,
    LinearClassifier,
    NumericError,
    RiskReport,
    SolveCertificate,
    SpdMatrix,
    adv_snr,
    brute_force_z,
    classify,
    delta_decomposition,
    empirical_moments,
    excess_risk,
    fit_known_sigma,
    fit_mean_baseline,
    fit_plugin,
    make_adv_instance,
    optimal_classifier,
    optimal_robust_risk,
    phi_bar,
    rate_log_ratio,
    risk_report,
    robust_risk_linear,
    sample,
    solve_z,
    standard_risk_linear,
    std_snr,
)

__all__ = [
    "AdvInstance",
    "BallSpec",
    "Dataset",
    "DeltaReport",
    "FitResult",
    "GaussianMixture",
    "IoError",
    "LinearClassifier",
    "NumericError",
    "RiskReport",
    "SolveCertificate",
    "SpdMatrix",
    "adv_snr",
    "brute_force_z",
    "classify",
    "delta_decomposition",
    "empirical_moments",
    "excess_risk",
    "fit_known_sigma",
    "fit_mean_baseline",
    "fit_plugin",
    "make_adv_instance",
    "optimal_classifier",
    "optimal_robust_risk",
    "phi_bar",
    "rate_log_ratio",
    "risk_report",
    "robust_risk_linear",
    "sample",
    "solve_z",
    "standard_risk_linear",
    "std_snr",
]

__version__ = "0.1.0"
