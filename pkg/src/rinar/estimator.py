"""Least-squares estimation of the model parameters.

The objective is the mean squared one-step prediction error of the rounded
linear predictor.  Because the predictor is a step function of the
parameters, the objective is piecewise constant, so the minimiser uses a
derivative-free dichotomous search applied to one coordinate at a time:
Yule-Walker initialisation, then cyclic passes over alpha_1..alpha_p and
lam until two consecutive iterations agree to within a tolerance.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InsufficientDataError
from .model import RinarParams
from .rounding import round_nearest_array
from .series_stats import as_int_series, yule_walker

__all__ = ["FitOptions", "FitResult", "contrast", "dichotomous_scalar_search", "fit"]

# Yule-Walker coefficients outside (-1, 1) are pulled to +/- this value
# before use as search initialisers; the alpha search brackets are (-1, 1).
_ALPHA_CLAMP = 0.999


@dataclass(frozen=True)
class FitOptions:
    """Tolerances and brackets for the coordinate search.

    The lam phase searches lambda0 +/- lambda_interval_halfwidth_factor *
    |lambda0|; when that half-width would be below
    lambda_fallback_halfwidth (i.e. |lambda0| is small), the fallback
    half-width is used instead so the bracket never degenerates.
    """

    scalar_range_tol: float = 0.001
    outer_tol: float = 0.001
    max_outer_iterations: int = 100
    lambda_interval_halfwidth_factor: float = 5.0
    lambda_fallback_halfwidth: float = 1.0

    def __post_init__(self):
        if self.scalar_range_tol <= 0 or self.outer_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_outer_iterations < 1:
            raise ValueError("max_outer_iterations must be >= 1")
        if self.lambda_interval_halfwidth_factor <= 0 or self.lambda_fallback_halfwidth <= 0:
            raise ValueError("lambda bracket parameters must be positive")


@dataclass
class FitResult:
    """Estimate plus search diagnostics.

    objective_trace holds the objective value at the initialiser and after
    each outer iteration; it is non-increasing and its last entry equals
    ``objective``.
    """

    theta_hat: RinarParams
    objective: float
    yw_init: RinarParams
    outer_iterations: int
    converged: bool
    objective_trace: list[float] = field(default_factory=list)


def _lag_design(series, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Design matrix of lagged values and the prediction targets.

    Row t holds (x[t-1], ..., x[t-p]) for target x[t], t = p..n-1; the first
    p observations only serve as the initial lag window.
    """
    x = as_int_series(series).astype(float)
    n = x.size
    if n < p + 1:
        raise InsufficientDataError(f"need at least p + 1 = {p + 1} observations, got {n}")
    cols = [x[p - 1 - j : n - 1 - j] for j in range(p)]
    return np.column_stack(cols), x[p:]


def _objective(design: np.ndarray, target: np.ndarray, alphas: np.ndarray, lam: float) -> float:
    pred = round_nearest_array(design @ alphas + lam)
    resid = target - pred
    return float(resid @ resid) / target.size


def contrast(params: RinarParams, series) -> float:
    """Mean squared one-step prediction error of the rounded predictor.

    The first p observations form the initial lag window; the average runs
    over the remaining n - p prediction targets.
    """
    design, target = _lag_design(series, params.p)
    return _objective(design, target, np.asarray(params.alphas), params.lam)


def dichotomous_scalar_search(objective, left, right, theta_init, range_tol) -> float:
    """Minimise a scalar function by a three-point bracket-shrinking search.

    Each pass recomputes mid_left = (left + theta) / 2 and
    mid_right = (right + theta) / 2, evaluates the objective at theta and
    both midpoints, and shrinks:

        best is theta     ->  left, right = mid_left, mid_right
        best is mid_left  ->  right, theta = theta, mid_left
        best is mid_right ->  left, theta = theta, mid_right

    Ties prefer theta, then mid_left.  The objective here is a step function
    of the parameter, so plateaus are normal; the tie rule keeps the search
    stationary on them and guarantees the value at theta never increases.
    Stops when |right - left| <= range_tol and returns the final theta.
    """
    left = float(left)
    right = float(right)
    if not left < right:
        raise ValueError(f"invalid bracket: need left < right, got [{left}, {right}]")
    if range_tol <= 0:
        raise ValueError("range_tol must be positive")
    theta = min(max(float(theta_init), left), right)
    # The bracket at least halves every two passes, so 4*ceil(log2(w/tol))
    # passes always suffice; exceeding that indicates a broken objective.
    max_passes = 4 * max(1, math.ceil(math.log2((right - left) / range_tol))) + 4
    passes = 0
    while abs(right - left) > range_tol:
        passes += 1
        if passes > max_passes:
            raise RuntimeError("dichotomous search failed to shrink its bracket")
        mid_left = (left + theta) / 2.0
        mid_right = (right + theta) / 2.0
        v1 = objective(theta)
        v2 = objective(mid_left)
        v3 = objective(mid_right)
        if v1 <= v2 and v1 <= v3:
            left, right = mid_left, mid_right
        elif v2 <= v3:
            right, theta = theta, mid_left
        else:
            left, theta = theta, mid_right
    return theta


def fit(series, p: int, options: FitOptions | None = None) -> FitResult:
    """Minimise the contrast over (alpha_1..alpha_p, lam) for the given order.

    Starts from the Yule-Walker estimate (coefficients clamped into (-1, 1)
    if needed).  Each outer iteration runs p scalar phases over the alphas
    on the bracket (-1, 1) and one over lam on a fixed bracket centred at
    the Yule-Walker intercept, then stops when no parameter moved by more
    than options.outer_tol, or after max_outer_iterations (recorded in the
    ``converged`` flag).  Deterministic given (series, p, options).
    """
    opts = options if options is not None else FitOptions()
    x = as_int_series(series)
    if x.size <= p + 1:
        raise InsufficientDataError(f"need more than p + 1 = {p + 1} observations, got {x.size}")
    yw_alphas, lambda0 = yule_walker(x, p)
    alphas = np.clip(yw_alphas, -_ALPHA_CLAMP, _ALPHA_CLAMP)
    yw_init = RinarParams(tuple(alphas), lambda0)

    design, target = _lag_design(x, p)

    half = max(
        opts.lambda_interval_halfwidth_factor * abs(lambda0),
        opts.lambda_fallback_halfwidth,
    )
    lam_lo, lam_hi = lambda0 - half, lambda0 + half

    cur = alphas.astype(float).copy()
    lam = float(lambda0)
    trace = [_objective(design, target, cur, lam)]
    converged = False
    iterations = 0
    for _ in range(opts.max_outer_iterations):
        iterations += 1
        prev = np.append(cur, lam)
        for j in range(p):

            def phase(value, j=j):
                trial = cur.copy()
                trial[j] = value
                return _objective(design, target, trial, lam)

            cur[j] = dichotomous_scalar_search(phase, -1.0, 1.0, cur[j], opts.scalar_range_tol)
        lam = dichotomous_scalar_search(
            lambda value: _objective(design, target, cur, value),
            lam_lo,
            lam_hi,
            lam,
            opts.scalar_range_tol,
        )
        trace.append(_objective(design, target, cur, lam))
        if float(np.max(np.abs(np.append(cur, lam) - prev))) <= opts.outer_tol:
            converged = True
            break

    theta_hat = RinarParams(tuple(cur), lam)
    return FitResult(
        theta_hat=theta_hat,
        objective=trace[-1],
        yw_init=yw_init,
        outer_iterations=iterations,
        converged=converged,
        objective_trace=trace,
    )
