"""Command-line interface: simulate, fit, forecast, identify, experiment, acf.

Structured results go to stdout as JSON; series and estimate matrices go to
CSV files.  Every run embeds a manifest (subcommand, fully resolved options,
seeds, input digests, package version) in its JSON output, and runs that
write a CSV artifact also write the manifest next to it as
<out>.manifest.json, so any output can be re-derived bit-for-bit.
"""

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .errors import RinarError
from .estimator import FitOptions, fit
from .experiments import McConfig, monte_carlo
from .forecast import rolling_forecast
from .identifiability import RationalParams, analyze
from .io import RunManifest, parse_fraction, read_series_csv, sha256_file, write_series_csv
from .model import DegenerateZero, PoissonDifference, RinarParams, simulate
from .series_stats import sample_acf, sample_pacf

__all__ = ["dispatch", "main"]


def _float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.replace("−", "-").split(",") if tok.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}") from None


def _fraction_list(text: str) -> list[Fraction]:
    return [parse_fraction(tok) for tok in text.split(",") if tok.strip() != ""]


def _innovation(args):
    if getattr(args, "noise", "poisson-diff") == "none":
        return DegenerateZero()
    return PoissonDifference(args.mu)


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def _manifest(args, seeds: dict, inputs: list) -> dict:
    options = {
        k: _jsonable(v)
        for k, v in sorted(vars(args).items())
        if k != "handler" and not k.startswith("_")
    }
    digests = {str(p): sha256_file(p) for p in inputs}
    return RunManifest(
        subcommand=args.subcommand,
        options=options,
        seeds=seeds,
        input_digests=digests,
        artifact_version=__version__,
    ).to_dict()


def _write_sibling_manifest(out_path: str, manifest: dict) -> None:
    with open(f"{out_path}.manifest.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _theta_dict(theta: RinarParams) -> dict:
    return {"alphas": list(theta.alphas), "lambda": theta.lam}


def _cmd_simulate(args) -> dict:
    params = RinarParams(tuple(args.alphas), args.lam)
    if args.p is not None and args.p != params.p:
        raise RinarError(f"--p {args.p} does not match the {params.p} coefficients given")
    series = simulate(
        params,
        _innovation(args),
        args.n,
        burn_in=args.burn_in,
        seed=args.seed,
        strict=not args.allow_nonstationary,
    )
    write_series_csv(args.out, series)
    manifest = _manifest(args, {"seed": args.seed}, [])
    _write_sibling_manifest(args.out, manifest)
    return {
        "subcommand": "simulate",
        "n": int(series.size),
        "out": args.out,
        "first_values": [int(v) for v in series[:5]],
        "manifest": manifest,
    }


def _cmd_fit(args) -> dict:
    series = read_series_csv(args.infile)
    result = fit(series, args.p, FitOptions())
    manifest = _manifest(args, {}, [args.infile])
    return {
        "subcommand": "fit",
        "theta_hat": _theta_dict(result.theta_hat),
        "objective": result.objective,
        "yw_init": _theta_dict(result.yw_init),
        "outer_iterations": result.outer_iterations,
        "converged": result.converged,
        "objective_trace": result.objective_trace,
        "manifest": manifest,
    }


def _cmd_forecast(args) -> dict:
    series = read_series_csv(args.infile)
    if args.alphas is not None:
        if args.lam is None:
            raise RinarError("--lambda is required when --alphas is given")
        theta = RinarParams(tuple(args.alphas), args.lam)
        fitted = None
    else:
        if args.p is None:
            raise RinarError("--p is required when fitting on the training split")
        fitted = fit(series[: args.split], args.p, FitOptions())
        theta = fitted.theta_hat
    report = rolling_forecast(theta, series, args.split)
    manifest = _manifest(args, {}, [args.infile])
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("target_index,actual,prediction,error\n")
            for i, (pred, err) in enumerate(zip(report.predictions, report.errors)):
                t = report.split_index + i
                fh.write(f"{t},{int(series[t])},{pred},{err}\n")
        _write_sibling_manifest(args.out, manifest)
    payload = {
        "subcommand": "forecast",
        "theta": _theta_dict(theta),
        "split": report.split_index,
        "n_test": len(report.predictions),
        "mae": report.mae,
        "manifest": manifest,
    }
    if fitted is not None:
        payload["fit_objective"] = fitted.objective
    print(f"mae = {report.mae:.6f} over {len(report.predictions)} one-step forecasts",
          file=sys.stderr)
    return payload


def _cmd_identify(args) -> dict:
    params = RationalParams(tuple(args.alphas), args.lam)
    report = analyze(params)
    manifest = _manifest(args, {}, [])
    return {
        "subcommand": "identify",
        "A": list(report.A),
        "d": report.d,
        "nu0": str(report.nu0),
        "nu0_decimal": float(report.nu0),
        "b": report.nu0.denominator,
        "b_parity": report.b_parity,
        "case": report.case_label,
        "k0": report.k0,
        "I0_lo": str(report.I0.lo),
        "I0_hi": str(report.I0.hi),
        "I0_lo_decimal": float(report.I0.lo),
        "I0_hi_decimal": float(report.I0.hi),
        "I0_length": str(report.I0_length),
        "manifest": manifest,
    }


def _cmd_experiment(args) -> dict:
    theta0 = RinarParams(tuple(args.alphas), args.lam)
    config = McConfig(
        theta0=theta0,
        innovation=_innovation(args),
        n=args.n,
        reps=args.reps,
        burn_in=args.burn_in,
        master_seed=args.seed,
    )
    summary = monte_carlo(config, max_workers=args.workers)
    if args.out:
        header = ",".join(f"alpha_{j + 1}" for j in range(theta0.p)) + ",lambda"
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(header + "\n")
            for row in summary.estimates:
                fh.write(",".join(repr(float(v)) for v in row) + "\n")
    manifest = _manifest(args, {"master_seed": args.seed}, [])
    if args.out:
        _write_sibling_manifest(args.out, manifest)
    for name, truth, mean, sd in summary.per_parameter:
        sd_text = f"{sd:.4f}" if sd is not None else "n/a"
        print(f"{name:>9}  truth {truth:+.4f}  mean {mean:+.4f}  sd {sd_text}", file=sys.stderr)
    return {
        "subcommand": "experiment",
        "reps_completed": summary.reps_completed,
        "failures": summary.failures,
        "per_parameter": [
            {"name": n, "truth": t, "mean": m, "sd": s} for n, t, m, s in summary.per_parameter
        ],
        "out": args.out,
        "manifest": manifest,
    }


def _cmd_acf(args) -> dict:
    series = read_series_csv(args.infile)
    acf = sample_acf(series, args.max_lag)
    pacf = sample_pacf(series, args.max_lag)
    manifest = _manifest(args, {}, [args.infile])
    return {
        "subcommand": "acf",
        "n": int(np.asarray(series).size),
        "max_lag": args.max_lag,
        "acf": [float(v) for v in acf],
        "pacf": [float(v) for v in pacf],
        "white_noise_band": 2.0 / float(np.sqrt(np.asarray(series).size)),
        "manifest": manifest,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rinar",
        description="Rounded integer-valued autoregression toolkit",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    sim = sub.add_parser("simulate", help="simulate a trajectory to CSV")
    sim.add_argument("--p", type=int, default=None, help="model order (checked against --alphas)")
    sim.add_argument("--alphas", type=_float_list, required=True,
                     help="comma-separated coefficients alpha_1..alpha_p")
    sim.add_argument("--lambda", dest="lam", type=float, required=True, help="intercept")
    sim.add_argument("--n", type=int, required=True, help="observations to keep")
    sim.add_argument("--burn-in", dest="burn_in", type=int, default=500)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--mu", type=float, default=1.0, help="rate of the Poisson-difference noise")
    sim.add_argument("--noise", choices=["poisson-diff", "none"], default="poisson-diff")
    sim.add_argument("--allow-nonstationary", action="store_true",
                     help="downgrade the stationarity check to a warning")
    sim.add_argument("--out", required=True, help="output CSV (one integer per line)")
    sim.set_defaults(handler=_cmd_simulate)

    fi = sub.add_parser("fit", help="least-squares fit of a series")
    fi.add_argument("--in", dest="infile", required=True)
    fi.add_argument("--p", type=int, required=True)
    fi.set_defaults(handler=_cmd_fit)

    fo = sub.add_parser("forecast", help="rolling one-step forecasts over a test split")
    fo.add_argument("--in", dest="infile", required=True)
    fo.add_argument("--split", type=int, required=True,
                    help="number of training observations (1-based count)")
    fo.add_argument("--p", type=int, default=None)
    fo.add_argument("--alphas", type=_float_list, default=None,
                    help="use these coefficients instead of fitting the training split")
    fo.add_argument("--lambda", dest="lam", type=float, default=None)
    fo.add_argument("--out", default=None, help="per-forecast CSV")
    fo.set_defaults(handler=_cmd_forecast)

    ident = sub.add_parser("identify", help="exact identifiability analysis")
    ident.add_argument("--alphas", type=_fraction_list, required=True,
                       help="comma-separated fraction literals, e.g. 3/25,3/8,1/5,-1/4")
    ident.add_argument("--lambda", dest="lam", type=parse_fraction, required=True,
                       help="intercept as a fraction literal, e.g. 5/2")
    ident.set_defaults(handler=_cmd_identify)

    exp = sub.add_parser("experiment", help="Monte Carlo replications: simulate + fit")
    exp.add_argument("--alphas", type=_float_list, default=[0.12, 0.375, 0.2, -0.25])
    exp.add_argument("--lambda", dest="lam", type=float, default=2.5)
    exp.add_argument("--n", type=int, default=500)
    exp.add_argument("--reps", type=int, default=500)
    exp.add_argument("--burn-in", dest="burn_in", type=int, default=500)
    exp.add_argument("--seed", type=int, default=0, help="master seed")
    exp.add_argument("--mu", type=float, default=1.0)
    exp.add_argument("--noise", choices=["poisson-diff", "none"], default="poisson-diff")
    exp.add_argument("--workers", type=int, default=1,
                     help="worker processes (capped by RINAR_THREADS)")
    exp.add_argument("--out", default=None, help="estimates CSV, one row per replication")
    exp.set_defaults(handler=_cmd_experiment)

    ac = sub.add_parser("acf", help="sample autocorrelations and partial autocorrelations")
    ac.add_argument("--in", dest="infile", required=True)
    ac.add_argument("--max-lag", dest="max_lag", type=int, default=20)
    ac.set_defaults(handler=_cmd_acf)

    return parser


def dispatch(argv=None) -> int:
    """Parse arguments and run one subcommand; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        payload = args.handler(args)
    except (RinarError, ValueError, OSError, RuntimeError) as exc:
        print(f"rinar: error: {exc}", file=sys.stderr)
        return 1
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def main() -> None:
    raise SystemExit(dispatch())
