"""Rounded integer-valued autoregression: simulation, estimation, identifiability.

The model recursion is X[t] = <alpha_1 X[t-1] + ... + alpha_p X[t-p] + lam> + eps[t],
where <.> rounds to the nearest integer (ties away from zero) and eps is
centred integer-valued noise.  The package covers trajectory simulation,
least-squares parameter estimation by dichotomous coordinate search,
exact identifiability analysis for rational coefficients, one-step integer
forecasting and a reproducible Monte Carlo harness, plus a CLI (`rinar`).
"""

__version__ = "0.1.0"

from .errors import (
    DegenerateSeriesError,
    InsufficientDataError,
    NonStationaryError,
    ParseError,
    RinarError,
    SingularSystemError,
)
from .estimator import FitOptions, FitResult, contrast, dichotomous_scalar_search, fit
from .experiments import McConfig, McSummary, monte_carlo, run_replication, splitmix64
from .forecast import ForecastReport, mae, one_step, rolling_forecast
from .identifiability import (
    IdentifiabilityReport,
    RationalInterval,
    RationalParams,
    analyze,
    classify_case,
    compute_I0,
    compute_nu0,
    lambda_equivalent,
    predicted_i0_length,
)
from .io import RunManifest, parse_fraction, read_series_csv, write_series_csv
from .model import (
    DegenerateZero,
    PoissonDifference,
    RinarParams,
    check_stationarity,
    regression_value,
    sample_innovation,
    simulate,
)
from .rounding import frac_part, int_part, round_nearest, round_nearest_array, sign
from .series_stats import sample_acf, sample_mean, sample_pacf, yule_walker

__all__ = [
    "__version__",
    "DegenerateSeriesError",
    "InsufficientDataError",
    "NonStationaryError",
    "ParseError",
    "RinarError",
    "SingularSystemError",
    "FitOptions",
    "FitResult",
    "contrast",
    "dichotomous_scalar_search",
    "fit",
    "McConfig",
    "McSummary",
    "monte_carlo",
    "run_replication",
    "splitmix64",
    "ForecastReport",
    "mae",
    "one_step",
    "rolling_forecast",
    "IdentifiabilityReport",
    "RationalInterval",
    "RationalParams",
    "analyze",
    "classify_case",
    "compute_I0",
    "compute_nu0",
    "lambda_equivalent",
    "predicted_i0_length",
    "RunManifest",
    "parse_fraction",
    "read_series_csv",
    "write_series_csv",
    "DegenerateZero",
    "PoissonDifference",
    "RinarParams",
    "check_stationarity",
    "regression_value",
    "sample_innovation",
    "simulate",
    "frac_part",
    "int_part",
    "round_nearest",
    "round_nearest_array",
    "sign",
    "sample_acf",
    "sample_mean",
    "sample_pacf",
    "yule_walker",
]
