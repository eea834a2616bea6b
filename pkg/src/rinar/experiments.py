"""Seeded Monte Carlo replication harness: simulate, fit, aggregate.

Each replication owns a random stream whose seed is a pure function of
(master_seed, rep_index), so results are bit-identical whether replications
run serially or across any number of worker processes, and adding more
replications never perturbs earlier ones.
"""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from .errors import DegenerateSeriesError, InsufficientDataError, SingularSystemError
from .estimator import FitOptions, fit
from .model import DEFAULT_BURN_IN, RinarParams, simulate

__all__ = ["McConfig", "McSummary", "splitmix64", "run_replication", "monte_carlo"]

_MASK64 = (1 << 64) - 1

# Fit failures that count as a failed replication rather than a crash.
_REPLICATION_FAILURES = (DegenerateSeriesError, SingularSystemError, InsufficientDataError)


def splitmix64(*values: int) -> int:
    """Fold integers into one 64-bit seed with the splitmix64 finaliser.

    Used to derive per-replication stream seeds from (master_seed,
    rep_index); the mixing is fixed and documented so runs reproduce across
    machines.
    """
    z = 0
    for v in values:
        z = (z + 0x9E3779B97F4A7C15 + (int(v) & _MASK64)) & _MASK64
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        z = z ^ (z >> 31)
    return z


@dataclass(frozen=True)
class McConfig:
    """One Monte Carlo experiment: truth, noise, sizes and seeding."""

    theta0: RinarParams
    innovation: object
    n: int = 500
    reps: int = 500
    burn_in: int = DEFAULT_BURN_IN
    master_seed: int = 0
    fit_options: FitOptions = field(default_factory=FitOptions)

    def __post_init__(self):
        if self.reps < 1:
            raise ValueError("reps must be >= 1")
        if self.n <= self.theta0.p + 1:
            raise ValueError("n must exceed p + 1 so every replication is fittable")
        if self.burn_in < 0:
            raise ValueError("burn_in must be >= 0")


@dataclass
class McSummary:
    """Aggregated estimates over the successful replications.

    per_parameter rows are (name, truth, mean, sd); sd uses the reps - 1
    divisor and is None when only one replication completed.  estimates has
    one row per successful replication, columns alpha_1..alpha_p, lambda.
    """

    per_parameter: list[tuple[str, float, float, float | None]]
    reps_completed: int
    failures: int
    estimates: np.ndarray


def run_replication(config: McConfig, rep_index: int) -> RinarParams:
    """Simulate one series with its derived stream seed and fit it.

    Deterministic per (config, rep_index).  Propagates fit errors; the
    aggregator records them as failures.
    """
    if not 0 <= rep_index < config.reps:
        raise ValueError(f"rep_index must be in [0, {config.reps})")
    stream_seed = splitmix64(config.master_seed, rep_index)
    series = simulate(
        config.theta0,
        config.innovation,
        config.n,
        burn_in=config.burn_in,
        seed=stream_seed,
    )
    result = fit(series, config.theta0.p, config.fit_options)
    return result.theta_hat


def _replicate_or_none(config: McConfig, rep_index: int):
    try:
        return run_replication(config, rep_index)
    except _REPLICATION_FAILURES:
        return None


def resolve_workers(max_workers: int | None, reps: int) -> int:
    """Worker count for an experiment, honouring the RINAR_THREADS cap."""
    cap = os.environ.get("RINAR_THREADS")
    requested = max_workers if max_workers is not None else 1
    if requested < 1:
        raise ValueError("max_workers must be >= 1")
    if cap is not None:
        requested = min(requested, max(1, int(cap)))
    return min(requested, reps)


def monte_carlo(config: McConfig, max_workers: int | None = None) -> McSummary:
    """Run all replications and aggregate mean and sd per parameter.

    max_workers=1 (default) runs serially; larger values fan replications
    out over worker processes.  The estimates matrix is identical either
    way because replication seeds do not depend on scheduling and rows are
    gathered in rep_index order.
    """
    workers = resolve_workers(max_workers, config.reps)
    if workers <= 1:
        results = [_replicate_or_none(config, i) for i in range(config.reps)]
    else:
        chunk = max(1, config.reps // (workers * 4))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(
                pool.map(partial(_replicate_or_none, config), range(config.reps), chunksize=chunk)
            )

    done = [theta for theta in results if theta is not None]
    failures = config.reps - len(done)
    if not done:
        raise RuntimeError(f"all {config.reps} replications failed")

    estimates = np.array([theta.as_array() for theta in done])
    p = config.theta0.p
    names = [f"alpha_{j + 1}" for j in range(p)] + ["lambda"]
    truths = list(config.theta0.alphas) + [config.theta0.lam]
    means = estimates.mean(axis=0)
    sds = estimates.std(axis=0, ddof=1) if len(done) > 1 else None
    per_parameter = [
        (names[k], float(truths[k]), float(means[k]), float(sds[k]) if sds is not None else None)
        for k in range(p + 1)
    ]
    return McSummary(
        per_parameter=per_parameter,
        reps_completed=len(done),
        failures=failures,
        estimates=estimates,
    )
