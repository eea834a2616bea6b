"""One-step-ahead integer prediction and rolling out-of-sample evaluation."""

from dataclasses import dataclass

import numpy as np

from .model import RinarParams, regression_value
from .series_stats import as_int_series

__all__ = ["ForecastReport", "one_step", "rolling_forecast", "mae"]


def one_step(params: RinarParams, window) -> int:
    """Predicted next value given the last p observations, most recent first.

    Integer-valued by construction (it is the rounded linear predictor).
    """
    return regression_value(params, window)


def mae(errors) -> float:
    """Mean absolute error of a non-empty error vector."""
    e = np.asarray(errors, dtype=float)
    if e.size == 0:
        raise ValueError("mae of an empty error vector")
    return float(np.mean(np.abs(e)))


@dataclass(frozen=True)
class ForecastReport:
    """One-step predictions over a held-out segment.

    split_index counts training observations; predictions[i] targets
    series[split_index + i] and errors[i] = actual - predicted.
    """

    split_index: int
    predictions: tuple[int, ...]
    errors: tuple[int, ...]
    mae: float


def rolling_forecast(params: RinarParams, series, split_index: int) -> ForecastReport:
    """Predict each held-out value from the actual (not forecast) lagged values.

    For every target index t from split_index to the end of the series, the
    prediction conditions on the observed values x[t-1], ..., x[t-p]; errors
    are therefore genuine one-step-ahead errors.
    """
    x = as_int_series(series)
    n = x.size
    p = params.p
    if split_index < p or split_index >= n:
        raise ValueError(
            f"split_index must be in [{p}, {n - 1}] "
            f"(need p lags before and at least one target after)"
        )
    predictions = []
    errors = []
    for t in range(split_index, n):
        window = x[t - p : t][::-1]
        predicted = regression_value(params, window)
        predictions.append(predicted)
        errors.append(int(x[t]) - predicted)
    return ForecastReport(
        split_index=int(split_index),
        predictions=tuple(predictions),
        errors=tuple(errors),
        mae=mae(errors),
    )
