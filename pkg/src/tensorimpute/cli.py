"""Command line driver: ``mask``, ``impute``, ``predict`` and ``eval``.

Set ``TENSORIMPUTE_LOG`` (e.g. ``INFO`` or ``DEBUG``) for solver logging.
"""
import argparse
import csv
import logging
import os
import sys

import numpy as np

from . import io
from .errors import ConfigError, DimensionError, ParseError
from .rolling import PredictionTask, predict
from .scenarios import MissingScenario, apply_mask, mape, rmse
from .solver import impute

EXIT_CODES = {ParseError: 3, DimensionError: 4, ConfigError: 5}

SOLVER_FLAGS = {
    "alpha1": float, "alpha2": float, "alpha3": float,
    "rho0": float, "rho_max": float, "c0": float, "theta": int,
    "epsilon": float, "max_iters": int, "seed": int, "lags": str,
    "lambda_tracks_rho": str,
}


def _add_input_options(p):
    p.add_argument("--delimiter", default=",")
    p.add_argument("--missing-token", default=None,
                   help="extra cell text meaning 'missing' (empty and nan always do)")


def _add_solver_options(p):
    p.add_argument("--config", help="key=value file; flags below override it")
    group = p.add_argument_group("solver overrides")
    for key, kind in SOLVER_FLAGS.items():
        group.add_argument("--" + key.replace("_", "-"), dest=key, type=kind, default=None)


def _resolve_config(args):
    values = io.read_config(args.config) if args.config else {}
    for key in SOLVER_FLAGS:
        flag = getattr(args, key)
        if flag is not None:
            values[key] = str(flag)
    return io.build_config(values)


def _scores(truth, est):
    excluded = int(np.sum(truth == 0))
    items = [("n_scored", str(truth.size))]
    items.append(("mape", repr(mape(truth, est)) if excluded < truth.size else "nan"))
    items.append(("rmse", repr(rmse(truth, est))))
    items.append(("mape_excluded_zero", str(excluded)))
    return items


def cmd_mask(args):
    y = io.load_csv(args.input, args.delimiter, args.missing_token)
    scenario = MissingScenario(args.kind, args.rate, args.seed, args.axis)
    if scenario.kind == "nm":
        y = io.trim_to_seasons(y, args.I)
    masked, hidden = apply_mask(y, scenario, args.I)
    io.write_csv(masked, args.out, args.delimiter)
    io.write_csv(hidden, args.truth_mask, args.delimiter)
    logging.info("hid %d of %d entries", hidden.sum(), hidden.size)
    return 0


def cmd_impute(args):
    y = io.load_csv(args.input, args.delimiter, args.missing_token)
    trimmed = io.trim_to_seasons(y, args.I)
    config = _resolve_config(args).resolve(args.I)
    xhat, report = impute(trimmed, args.I, config)
    io.write_csv(xhat, args.out, args.delimiter)
    items = [
        ("command", "impute"),
        ("sensors", str(trimmed.M)),
        ("time_points", str(trimmed.N)),
        ("season", str(args.I)),
        ("trimmed_columns", str(y.N - trimmed.N)),
        *io.config_items(config),
        ("iterations", str(report.iterations)),
        ("final_residual", repr(report.residual)),
        ("final_rho", repr(report.rho)),
        ("converged", str(report.converged).lower()),
        ("wall_time", f"{report.wall_time:.3f}"),
    ]
    io.write_report(args.report, items)
    if not report.converged:
        print(f"warning: impute did not converge in {report.iterations} iterations",
              file=sys.stderr)
    return 0


def cmd_predict(args):
    y = io.load_csv(args.input, args.delimiter, args.missing_token)
    if args.J is None:
        task = PredictionTask.with_full_history(args.t, args.S, args.tau, args.I)
    else:
        task = PredictionTask(args.t, args.S, args.tau, args.I, args.J)
    task.validate(y.N)
    config = _resolve_config(args).resolve(args.I)
    prediction, reports = predict(y, task, config, n_jobs=args.jobs)
    io.write_csv(prediction, args.out, args.delimiter)

    region = y.columns(task.t, task.t + task.S * task.tau)
    plot_path = args.plot_csv or os.path.splitext(args.out)[0] + ".plot.csv"
    with open(plot_path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["sensor", "time", "truth", "estimate"])
        for m in range(region.M):
            for c in range(region.N):
                truth = format(region.values[m, c], ".17g") if region.mask[m, c] else ""
                writer.writerow([m, task.t + c, truth, format(prediction[m, c], ".17g")])

    unconverged = sum(not r.converged for r in reports)
    items = [
        ("command", "predict"),
        ("sensors", str(y.M)),
        ("t", str(task.t)), ("S", str(task.S)), ("tau", str(task.tau)),
        ("season", str(task.season)), ("days", str(task.days)),
        *io.config_items(config),
        ("windows_unconverged", str(unconverged)),
        ("converged", str(unconverged == 0).lower()),
        ("mean_iterations", repr(float(np.mean([r.iterations for r in reports])))),
        ("wall_time", f"{sum(r.wall_time for r in reports):.3f}"),
    ]
    if region.mask.any():
        items += _scores(region.values[region.mask], prediction[region.mask])
    io.write_report(args.report, items)
    if unconverged:
        print(f"warning: {unconverged} of {task.S} windows did not converge", file=sys.stderr)
    return 0


def cmd_eval(args):
    truth = io.load_csv(args.truth, args.delimiter, args.missing_token)
    est = io.load_csv(args.est, args.delimiter, args.missing_token)
    hidden = io.load_csv(args.mask, args.delimiter)
    if est.shape != hidden.shape or not hidden.mask.all():
        raise DimensionError(f"mask {hidden.shape} must be complete and match estimate {est.shape}")
    if truth.shape != est.shape:
        # the imputer drops leading partial seasons; score the aligned trailing block
        if truth.M != est.M or truth.N < est.N:
            raise DimensionError(f"truth {truth.shape} cannot align with estimate {est.shape}")
        truth = truth.columns(truth.N - est.N, truth.N)
    scored = (hidden.values != 0) & truth.mask
    if not scored.any():
        raise DimensionError("mask selects no entries with known truth")
    if not est.mask[scored].all():
        raise DimensionError("estimate has missing cells inside the scored entries")
    io.write_report(args.metrics, _scores(truth.values[scored], est.values[scored]))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tensorimpute",
        description="Low-rank autoregressive tensor completion for time series.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mask", help="hide entries of a complete matrix (RM or NM)")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--I", type=int, required=True, help="points per season")
    p.add_argument("--kind", choices=("rm", "nm"), required=True)
    p.add_argument("--rate", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--axis", choices=("day", "time_of_day"), default="day",
                   help="NM block orientation")
    p.add_argument("--out", required=True)
    p.add_argument("--truth-mask", required=True, help="0/1 CSV marking hidden entries")
    _add_input_options(p)
    p.set_defaults(func=cmd_mask)

    p = sub.add_parser("impute", help="fill missing entries")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--I", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--report", required=True)
    _add_input_options(p)
    _add_solver_options(p)
    p.set_defaults(func=cmd_impute)

    p = sub.add_parser("predict", help="rolling prediction of future columns")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--I", type=int, required=True)
    p.add_argument("--t", type=int, required=True, help="columns before the first prediction")
    p.add_argument("--S", type=int, required=True, help="number of windows")
    p.add_argument("--tau", type=int, required=True, help="columns per window")
    p.add_argument("--J", type=int, default=None,
                   help="seasons per window (default: all that fit)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", required=True)
    p.add_argument("--report", required=True)
    p.add_argument("--plot-csv", default=None,
                   help="long-format truth/estimate CSV (default: <out>.plot.csv)")
    _add_input_options(p)
    _add_solver_options(p)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("eval", help="MAPE/RMSE over masked entries")
    p.add_argument("--truth", required=True)
    p.add_argument("--est", required=True)
    p.add_argument("--mask", required=True)
    p.add_argument("--metrics", required=True)
    _add_input_options(p)
    p.set_defaults(func=cmd_eval)
    return parser


def run_cli(argv=None):
    logging.basicConfig(
        level=os.environ.get("TENSORIMPUTE_LOG", "WARNING").upper(),
        format="%(levelname)s %(name)s: %(message)s",
    )
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except tuple(EXIT_CODES) as exc:
        kind = next(cls for cls in EXIT_CODES if isinstance(exc, cls))
        print(f"error ({kind.__name__}): {exc}", file=sys.stderr)
        return EXIT_CODES[kind]
    except OSError as exc:
        print(f"error (OSError): {exc}", file=sys.stderr)
        return 6


def main():
    sys.exit(run_cli())
