import numpy as np
import pytest

from rinar.estimator import FitOptions
from rinar.experiments import McConfig, monte_carlo, resolve_workers, run_replication, splitmix64
from rinar.model import DegenerateZero, PoissonDifference, RinarParams

THETA = RinarParams((0.12, 0.375, 0.2, -0.25), 2.5)


def small_config(**overrides):
    base = dict(
        theta0=THETA,
        innovation=PoissonDifference(1.0),
        n=200,
        reps=8,
        burn_in=100,
        master_seed=7,
    )
    base.update(overrides)
    return McConfig(**base)


class TestSplitmix64:
    def test_deterministic(self):
        assert splitmix64(42, 3) == splitmix64(42, 3)

    def test_distinct_indices_give_distinct_seeds(self):
        seeds = {splitmix64(0, i) for i in range(1000)}
        assert len(seeds) == 1000

    def test_index_seeds_independent_of_rep_count(self):
        # the seed of replication i never depends on how many reps exist
        assert splitmix64(9, 4) == splitmix64(9, 4)
        assert splitmix64(9, 4) != splitmix64(10, 4)

    def test_64_bit_range(self):
        for v in (splitmix64(0), splitmix64(2**63), splitmix64(-1, 5)):
            assert 0 <= v < 2**64


class TestRunReplication:
    def test_deterministic_per_index(self):
        cfg = small_config()
        a = run_replication(cfg, 7)
        b = run_replication(cfg, 7)
        assert a == b

    def test_indices_differ(self):
        cfg = small_config()
        assert run_replication(cfg, 0) != run_replication(cfg, 1)

    def test_degenerate_noise_gives_identical_replications(self):
        cfg = small_config(
            theta0=RinarParams((0.0,), 1.0),
            innovation=DegenerateZero(),
            n=50,
            reps=3,
            burn_in=0,
        )
        # noise-free with alpha=0 and lam=1 settles on the constant series 1,
        # which has no variance to fit
        with pytest.raises(RuntimeError):
            monte_carlo(cfg)

    def test_index_bounds(self):
        cfg = small_config()
        with pytest.raises(ValueError):
            run_replication(cfg, cfg.reps)


class TestMonteCarlo:
    def test_summary_shape(self):
        cfg = small_config()
        summary = monte_carlo(cfg)
        assert summary.reps_completed == cfg.reps
        assert summary.failures == 0
        assert summary.estimates.shape == (cfg.reps, THETA.p + 1)
        names = [row[0] for row in summary.per_parameter]
        assert names == ["alpha_1", "alpha_2", "alpha_3", "alpha_4", "lambda"]

    def test_serial_and_parallel_identical(self):
        cfg = small_config(reps=6)
        serial = monte_carlo(cfg, max_workers=1)
        parallel = monte_carlo(cfg, max_workers=4)
        assert np.array_equal(serial.estimates, parallel.estimates)

    def test_single_rep_reports_absent_sd(self):
        cfg = small_config(reps=1)
        summary = monte_carlo(cfg)
        assert all(sd is None for _, _, _, sd in summary.per_parameter)

    def test_sd_uses_n_minus_one(self):
        cfg = small_config(reps=5)
        summary = monte_carlo(cfg)
        expected = summary.estimates.std(axis=0, ddof=1)
        for k, (_, _, _, sd) in enumerate(summary.per_parameter):
            assert sd == pytest.approx(float(expected[k]))

    def test_config_validation(self):
        with pytest.raises(ValueError):
            small_config(reps=0)
        with pytest.raises(ValueError):
            small_config(n=4)
        with pytest.raises(ValueError):
            small_config(burn_in=-1)


class TestResolveWorkers:
    def test_default_is_serial(self):
        assert resolve_workers(None, 100) == 1

    def test_capped_by_reps(self):
        assert resolve_workers(64, 5) == 5

    def test_env_cap(self, monkeypatch):
        monkeypatch.setenv("RINAR_THREADS", "2")
        assert resolve_workers(16, 100) == 2

    def test_invalid_rejected(self):
        with pytest.raises(ValueError):
            resolve_workers(0, 10)
