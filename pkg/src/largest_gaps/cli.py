"""Command-line interface: ``largest-gaps {simulate,fit,evaluate,bound,experiment,summarize}``.

Exit status is 0 on success, 2 on invalid input and 3 on I/O failure.
"""

import argparse
import json
import logging
from pathlib import Path
import platform
import sys
import time

import numpy as np

from . import __version__
from .bounds import BoundInputs, theorem1_terms
from .evaluation import joint_success
from .experiments import (
    ExperimentConfig, records_from_csv, records_to_csv, run_grid, summarize, summary_to_csv,
)
from .gaps import FitResult, ThresholdStrategy, largest_gaps_fit, threshold_value
from .io import (
    load_label_vector, load_matrix, load_params, save_labels, save_matrix,
)
from .model import (
    RNG_NAME, LabelAssignment, compute_key_parameters, sample, validate_parameters,
)

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 2, 3

log = logging.getLogger("largest_gaps")


class CLIError(Exception):
    def __init__(self, message, code=EXIT_INVALID):
        super().__init__(message)
        self.code = code


def _write_json(doc, path):
    text = json.dumps(doc, indent=2) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load_valid_params(path):
    params = load_params(path)
    validate_parameters(params).raise_if_invalid()
    return params


def _resolve_thresholds(args, n, d):
    if args.sg is not None or args.sm is not None:
        if args.sg is None or args.sm is None:
            raise CLIError("--sg and --sm must be given together")
        return args.sg, args.sm, None
    if args.strategy is None:
        raise CLIError("give either --sg/--sm or --strategy")
    strategy = ThresholdStrategy.parse(args.strategy)
    key = None
    if strategy is ThresholdStrategy.CONSTANT:
        if args.params is None:
            raise CLIError("strategy S1 needs --params with the true model")
        key = compute_key_parameters(_load_valid_params(args.params))
    return (
        threshold_value(strategy, n, d, key=key, axis="row"),
        threshold_value(strategy, d, n, key=key, axis="column"),
        strategy.value,
    )


def cmd_simulate(args):
    params = _load_valid_params(args.params)
    seed = 0 if args.seed is None else args.seed
    z, w, x = sample(params, args.n, args.d, seed)
    prefix = args.out
    ext = "csv" if args.format == "csv" else "txt"
    save_matrix(x, f"{prefix}_x.{ext}", fmt=args.format)
    save_labels(z, f"{prefix}_z.csv")
    save_labels(w, f"{prefix}_w.csv")
    _write_json({
        "params": params.to_dict(),
        "n": args.n,
        "d": args.d,
        "seed": seed,
        "generator": RNG_NAME,
        "tool": "largest-gaps",
        "version": __version__,
    }, f"{prefix}_provenance.json")
    log.info("wrote %s_{x.%s,z.csv,w.csv,provenance.json}", prefix, ext)


def cmd_fit(args):
    x = load_matrix(args.matrix, fmt=args.format)
    n, d = x.shape
    s_g, s_m, strategy = _resolve_thresholds(args, n, d)
    result = largest_gaps_fit(x, s_g, s_m)
    doc = result.to_dict()
    doc["strategy"] = strategy
    doc["n"], doc["d"] = n, d
    doc["timing"] = {"fit_seconds": result.fit_seconds}
    _write_json(doc, args.out)
    log.info("g_hat=%d m_hat=%d", result.g_hat, result.m_hat)


def cmd_evaluate(args):
    with open(args.fit, encoding="utf-8") as fh:
        fit = FitResult.from_dict(json.load(fh))
    truth = _load_valid_params(args.params)
    z = LabelAssignment(load_label_vector(args.z), truth.g)
    w = LabelAssignment(load_label_vector(args.w), truth.m)
    if len(z) != len(fit.z_hat) or len(w) != len(fit.w_hat):
        raise CLIError("true labels and fitted labels differ in length")
    event = joint_success(fit, z, w, truth, args.t)
    doc = event.to_dict()
    doc["dinf"] = repr(event.dinf) if not np.isfinite(event.dinf) else event.dinf
    _write_json(doc, args.out)


def cmd_bound(args):
    params = _load_valid_params(args.params)
    key = compute_key_parameters(params)
    s_g, s_m, _ = _resolve_thresholds(args, args.n, args.d)
    inputs = BoundInputs(key, params.g, params.m, args.n, args.d, s_g, s_m, args.t)
    breakdown = theorem1_terms(inputs)
    lines = [f"s_g\t{s_g!r}", f"s_m\t{s_m!r}", f"t\t{args.t!r}"]
    lines += [f"{term.name}\t{term.value!r}" for term in breakdown.terms]
    lines += [f"total_raw\t{breakdown.raw!r}", f"total_clipped\t{breakdown.clipped!r}"]
    sys.stdout.write("\n".join(lines) + "\n")


def cmd_experiment(args):
    with open(args.config, encoding="utf-8") as fh:
        doc = json.load(fh)
    if args.seed is not None:
        doc["master_seed"] = args.seed
    config = ExperimentConfig.from_dict(doc)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    start = time.perf_counter()
    records = []
    current = None
    for record in run_grid(config, n_jobs=args.jobs):
        cell = (record.epsilon, record.n, record.d, record.strategy)
        if cell != current:
            current = cell
            log.info("cell epsilon=%s n=%d d=%d strategy=%s", *cell)
        records.append(record)
    wall = time.perf_counter() - start
    (out_dir / "records.csv").write_text(records_to_csv(records), encoding="utf-8", newline="")
    (out_dir / "summary.csv").write_text(summary_to_csv(summarize(records)), encoding="utf-8", newline="")
    _write_json({
        "config": config.to_dict(),
        "records": len(records),
        "jobs": args.jobs,
        "wall_seconds": wall,
        "generator": RNG_NAME,
        "versions": {
            "largest_gaps": __version__,
            "numpy": np.__version__,
            "python": platform.python_version(),
        },
    }, out_dir / "manifest.json")
    log.info("%d records in %.1f s", len(records), wall)


def cmd_summarize(args):
    records = records_from_csv(Path(args.records).read_text(encoding="utf-8"))
    text = summary_to_csv(summarize(records))
    if args.out is None or args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8", newline="")


def _add_threshold_flags(p):
    p.add_argument("--sg", type=float, help="row threshold")
    p.add_argument("--sm", type=float, help="column threshold")
    p.add_argument("--strategy", help="threshold strategy S1..S4 (S1 needs --params)")


def build_parser():
    parser = argparse.ArgumentParser(prog="largest-gaps", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=None, help="random seed (simulate; experiment master seed)")
    parser.add_argument("--quiet", action="store_true", help="only log warnings and errors")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="sample (z, w, x) from a parameter file")
    p.add_argument("--params", required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--out", required=True, help="output prefix")
    p.add_argument("--format", choices=("csv", "raw"), default="csv")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("fit", help="run Largest Gaps on a matrix file")
    p.add_argument("matrix")
    _add_threshold_flags(p)
    p.add_argument("--params", help="true parameters, for strategy S1")
    p.add_argument("--format", choices=("csv", "raw"), default=None, help="default: auto-detect")
    p.add_argument("--out", default=None, help="output JSON (default stdout)")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("evaluate", help="compare a fit with the true labels and parameters")
    p.add_argument("--fit", required=True)
    p.add_argument("--z", required=True, help="true row labels")
    p.add_argument("--w", required=True, help="true column labels")
    p.add_argument("--params", required=True)
    p.add_argument("--t", type=float, default=0.1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("bound", help="print the failure-probability bound term by term")
    p.add_argument("--params", required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    _add_threshold_flags(p)
    p.add_argument("--t", type=float, default=0.1)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("experiment", help="run a Monte Carlo grid")
    p.add_argument("config")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("summarize", help="aggregate a records CSV")
    p.add_argument("records")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_summarize)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    try:
        args.func(args)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
