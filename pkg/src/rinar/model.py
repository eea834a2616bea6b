"""The RINAR(p) process: parameters, regression function, innovations, simulation.

The recursion is

    X[t] = round_nearest(alpha_1 X[t-1] + ... + alpha_p X[t-p] + lam) + eps[t]

with centred, integer-valued innovations eps.  Trajectories are therefore
integer-valued by construction, and the process is ergodic whenever
sum_j |alpha_j| < 1.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import NonStationaryError
from .rounding import round_nearest

__all__ = [
    "RinarParams",
    "PoissonDifference",
    "DegenerateZero",
    "regression_value",
    "check_stationarity",
    "sample_innovation",
    "simulate",
]

DEFAULT_BURN_IN = 500


@dataclass(frozen=True)
class RinarParams:
    """Parameter vector (alpha_1, ..., alpha_p, lam); the order p is len(alphas)."""

    alphas: tuple[float, ...]
    lam: float

    def __post_init__(self):
        alphas = tuple(float(a) for a in self.alphas)
        if len(alphas) < 1:
            raise ValueError("order p must be >= 1")
        if not all(math.isfinite(a) for a in alphas):
            raise ValueError("autoregressive coefficients must be finite")
        lam = float(self.lam)
        if not math.isfinite(lam):
            raise ValueError("lam must be finite")
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "lam", lam)

    @property
    def p(self) -> int:
        return len(self.alphas)

    @property
    def stationary(self) -> bool:
        return sum(abs(a) for a in self.alphas) < 1.0

    def as_array(self) -> np.ndarray:
        """Flat vector (alpha_1, ..., alpha_p, lam)."""
        return np.array(self.alphas + (self.lam,))


def check_stationarity(params: RinarParams) -> bool:
    """True iff sum_j |alpha_j| < 1 (strict)."""
    return params.stationary


class DegenerateZero:
    """Innovation that is identically zero (noise-free recursion)."""

    variance = 0.0

    def sample(self, rng) -> int:
        return 0

    def __repr__(self):
        return "DegenerateZero()"

    def __eq__(self, other):
        return isinstance(other, DegenerateZero)

    def __hash__(self):
        return hash("DegenerateZero")


@dataclass(frozen=True)
class PoissonDifference:
    """Difference of two i.i.d. Poisson(rate) draws.

    Centred and integer-valued, with variance 2 * rate.  Draws use inversion
    by sequential search on a single uniform each, so a seeded generator
    produces the same stream on any platform.
    """

    rate: float = 1.0

    def __post_init__(self):
        rate = float(self.rate)
        if not (math.isfinite(rate) and rate > 0.0):
            raise ValueError(f"rate must be a positive finite number, got {self.rate!r}")
        object.__setattr__(self, "rate", rate)

    @property
    def variance(self) -> float:
        return 2.0 * self.rate

    def sample(self, rng) -> int:
        return _poisson_inverse(rng.random(), self.rate) - _poisson_inverse(
            rng.random(), self.rate
        )


def _poisson_inverse(u: float, mu: float) -> int:
    # Smallest k with CDF(k) >= u, by forward summation of pmf terms.
    # Exact and O(mu) expected time; intended for the small rates used here.
    p = math.exp(-mu)
    cdf = p
    k = 0
    limit = 1000 + int(10 * mu)
    while u > cdf:
        k += 1
        if k > limit:
            raise ValueError(f"poisson inversion did not converge for rate {mu}")
        p *= mu / k
        cdf += p
    return k


def sample_innovation(spec, rng) -> int:
    """Draw one innovation from the given spec using the generator's uniforms."""
    return spec.sample(rng)


def regression_value(params: RinarParams, window) -> int:
    """Rounded linear predictor for a lag window ordered most-recent-first.

    window = (X[t], X[t-1], ..., X[t-p+1]) predicts X[t+1].
    """
    w = tuple(window)
    if len(w) != params.p:
        raise ValueError(f"window length {len(w)} does not match model order {params.p}")
    acc = params.lam
    for a, x in zip(params.alphas, w):
        acc += a * float(x)
    return round_nearest(acc)


def simulate(
    params: RinarParams,
    innovation,
    n: int,
    burn_in: int = DEFAULT_BURN_IN,
    seed: int = 0,
    initial=None,
    strict: bool = True,
) -> np.ndarray:
    """Simulate n observations of the process after a burn-in period.

    Iterates the recursion for burn_in + n steps from ``initial`` (default:
    an all-zero window), discards the first burn_in values and returns the
    final n as an int64 array.  Output is a deterministic function of every
    argument, including the seed.

    Non-stationary parameters raise NonStationaryError; pass strict=False to
    downgrade that to a warning and simulate anyway.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if burn_in < 0:
        raise ValueError("burn_in must be >= 0")
    if not check_stationarity(params):
        total = sum(abs(a) for a in params.alphas)
        msg = f"sum of |alpha_j| = {total} is not < 1; the process has no stationary law"
        if strict:
            raise NonStationaryError(msg)
        warnings.warn(msg, RuntimeWarning, stacklevel=2)
    p = params.p
    if initial is None:
        window = [0] * p
    else:
        window = [int(v) for v in initial]
        if len(window) != p:
            raise ValueError(f"initial window length {len(window)} does not match order {p}")
    rng = np.random.default_rng(seed)
    out = np.empty(burn_in + n, dtype=np.int64)
    for t in range(burn_in + n):
        x = regression_value(params, window) + innovation.sample(rng)
        out[t] = x
        window = [x] + window[:-1]
    return out[burn_in:]
