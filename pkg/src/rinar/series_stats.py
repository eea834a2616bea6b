"""Sample statistics on integer series: mean, ACF, PACF, Yule-Walker solver.

The autocorrelation denominator uses the full-sample (biased) convention,
which keeps the lag matrix positive semi-definite and the Durbin-Levinson
recursion stable.
"""

import numpy as np

from .errors import DegenerateSeriesError, InsufficientDataError, SingularSystemError

__all__ = ["sample_mean", "sample_acf", "sample_pacf", "yule_walker"]

# Reject the Toeplitz solve when a prediction-error pivot falls below this.
_PIVOT_FLOOR = 1e-12


def as_int_series(values) -> np.ndarray:
    """Validate and convert a count series to a 1-d int64 array."""
    x = np.asarray(values)
    if x.ndim != 1 or x.size == 0:
        raise ValueError("series must be a non-empty one-dimensional sequence")
    if not np.all(np.isfinite(x.astype(float))):
        raise ValueError("series values must be finite")
    if np.any(np.mod(x, 1) != 0):
        raise ValueError("series values must be integers")
    return x.astype(np.int64)


def sample_mean(series) -> float:
    """Arithmetic mean of the series."""
    return float(as_int_series(series).mean())


def sample_acf(series, max_lag: int) -> np.ndarray:
    """Sample autocorrelations rho[0..max_lag].

    rho[k] = sum_{t<n-k} (x_t - mean)(x_{t+k} - mean) / sum_t (x_t - mean)^2,
    so rho[0] == 1 and |rho[k]| <= 1.
    """
    x = as_int_series(series).astype(float)
    n = x.size
    if max_lag < 1:
        raise ValueError("max_lag must be >= 1")
    if max_lag >= n:
        raise ValueError(f"max_lag ({max_lag}) must be smaller than the series length ({n})")
    d = x - x.mean()
    denom = float(d @ d)
    if denom == 0.0:
        raise DegenerateSeriesError("series is constant; autocorrelation is undefined")
    rho = np.empty(max_lag + 1)
    rho[0] = 1.0
    for k in range(1, max_lag + 1):
        rho[k] = float(d[:-k] @ d[k:]) / denom
    return rho


def _durbin_levinson(rho: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Levinson recursion on normalised autocorrelations.

    Returns (phi, pacf) where phi[k, :k+1] solves the order-(k+1)
    Yule-Walker system and pacf[k] = phi[k, k].
    """
    phi = np.zeros((p, p))
    pacf = np.zeros(p)
    v = 1.0
    for k in range(p):
        if v < _PIVOT_FLOOR:
            raise SingularSystemError(
                f"sample autocorrelation matrix R_{p} is near-singular "
                f"(pivot {v:.3e} at order {k})"
            )
        if k == 0:
            reflect = rho[1]
        else:
            reflect = (rho[k + 1] - phi[k - 1, :k] @ rho[k:0:-1]) / v
        phi[k, k] = reflect
        if k > 0:
            phi[k, :k] = phi[k - 1, :k] - reflect * phi[k - 1, :k][::-1]
        v *= 1.0 - reflect * reflect
        pacf[k] = reflect
    return phi, pacf


def sample_pacf(series, max_lag: int) -> np.ndarray:
    """Partial autocorrelations phi_kk for k = 1..max_lag."""
    rho = sample_acf(series, max_lag)
    try:
        _, pacf = _durbin_levinson(rho, max_lag)
    except SingularSystemError as exc:
        raise DegenerateSeriesError(str(exc)) from None
    return pacf


def yule_walker(series, p: int) -> tuple[np.ndarray, float]:
    """Solve R_p @ alpha = rho_p and return (alphas, lambda0).

    R_p is the symmetric Toeplitz matrix of sample autocorrelations,
    rho_p = (rho(1), ..., rho(p)), and the intercept estimate is
    lambda0 = mean * (1 - sum(alphas)).

    Raises SingularSystemError when a pivot of the Toeplitz solve falls
    below 1e-12, and InsufficientDataError when the series has fewer than
    p + 1 observations.
    """
    x = as_int_series(series)
    if p < 1:
        raise ValueError("order p must be >= 1")
    if x.size <= p:
        raise InsufficientDataError(
            f"need more than p = {p} observations, got {x.size}"
        )
    rho = sample_acf(x, p)
    phi, _ = _durbin_levinson(rho, p)
    alphas = phi[p - 1].copy()
    lambda0 = float(x.mean()) * (1.0 - float(alphas.sum()))
    return alphas, lambda0
