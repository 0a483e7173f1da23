"""Command-line front end.

Four subcommands cover the full pipeline: ``generate`` writes synthetic
series as single-column CSV, ``estimate`` runs one estimator over such a
CSV and emits a JSON report, ``sweep`` executes a TOML-described experiment
grid, and ``bench`` times the estimators on white noise.

Exit codes: 0 success, 1 usage error, 2 data error (malformed CSV or
config), 3 estimator error (estimate undefined or series too short).
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager

from .baselines import METRICS
from .core import ESTIMATOR_IDS, EstimateReport, ensure_series, to_bits
from .harness import (
    ConfigError,
    EstimatorSpec,
    bench_to_csv,
    evaluate_estimator,
    load_config,
    run_bench,
    run_sweep,
)
from .processes import (
    PROCESS_KINDS,
    ProcessSpec,
    generate,
    read_series_csv,
    write_series_csv,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_ESTIMATOR = 3


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class EstimatorError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad flags; route through UsageError
    # instead so the documented exit codes hold.
    def error(self, message):
        raise UsageError(message)


@contextmanager
def _open_out(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fp:
            yield fp


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="npdentropy", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("generate", help="write a synthetic series as CSV")
    gen.add_argument("--kind", required=True, choices=PROCESS_KINDS)
    gen.add_argument("--hurst", type=float, default=None)
    gen.add_argument("--sigma2", type=float, default=1.0)
    gen.add_argument("--n", type=int, required=True, help="series length")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--period", type=int, default=100,
                     help="mean-shift segment length")
    gen.add_argument("--output", default=None, help="CSV path (default: stdout)")
    gen.set_defaults(func=_cmd_generate)

    est = sub.add_parser("estimate", help="run one estimator on a CSV series")
    est.add_argument("--estimator", required=True, choices=ESTIMATOR_IDS)
    est.add_argument("--input", required=True, help="single-column 'value' CSV")
    est.add_argument("--delta", type=float, default=1.0, help="npd cell width")
    est.add_argument("--m", type=int, default=3, help="apen/sampen template length")
    est.add_argument("--r", type=float, default=0.2, help="apen/sampen tolerance")
    est.add_argument("--order", type=int, default=3, help="permen pattern length")
    est.add_argument("--metric", choices=METRICS, default="chebyshev")
    est.add_argument("--units", choices=("nats", "bits"), default="nats")
    est.add_argument("--output", default=None, help="JSON path (default: stdout)")
    est.set_defaults(func=_cmd_estimate)

    swp = sub.add_parser("sweep", help="run a TOML-described experiment grid")
    swp.add_argument("--config", required=True, help="TOML sweep description")
    swp.add_argument("--workers", type=int, default=None,
                     help="override worker count from the config")
    swp.add_argument("--output", default=None,
                     help="override output path from the config")
    swp.add_argument("--format", choices=("csv", "json"), default=None,
                     help="override output format from the config")
    swp.set_defaults(func=_cmd_sweep)

    ben = sub.add_parser("bench", help="time all estimators on white noise")
    ben.add_argument("--n", type=int, default=1000, help="series length per call")
    ben.add_argument("--trials", type=int, default=10, help="timed calls per estimator")
    ben.set_defaults(func=_cmd_bench)

    return parser


def _cmd_generate(args) -> int:
    try:
        spec = ProcessSpec(
            kind=args.kind,
            length=args.n,
            seed=args.seed,
            hurst=args.hurst,
            sigma2=args.sigma2,
            period=args.period,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    series = generate(spec)
    with _open_out(args.output) as fp:
        write_series_csv(series, fp)
    return EXIT_OK


def _cmd_estimate(args) -> int:
    try:
        with open(args.input, newline="") as fp:
            raw = read_series_csv(fp)
        values = ensure_series(raw, name=args.input)
    except OSError as exc:
        raise DataError(str(exc)) from None
    except ValueError as exc:
        raise DataError(f"{args.input}: {exc}") from None

    try:
        spec = EstimatorSpec(
            estimator_id=args.estimator,
            delta=args.delta,
            m=args.m,
            r=args.r,
            metric=args.metric,
            order=args.order,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None

    try:
        value = evaluate_estimator(spec, values)
    except (ArithmeticError, ValueError) as exc:
        raise EstimatorError(str(exc)) from None

    report = EstimateReport.from_values(spec.estimator_id, spec.params(), [value])
    payload = {
        "estimator_id": report.estimator_id,
        "params": report.params,
        "series_length": int(values.size),
        "replication_values": list(report.replication_values),
        "mean_nats": report.mean_nats,
        "variance": report.variance,
        "units": args.units,
        "value": report.mean_nats if args.units == "nats" else to_bits(report.mean_nats),
    }
    with _open_out(args.output) as fp:
        json.dump(payload, fp, indent=2)
        fp.write("\n")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    from dataclasses import replace

    try:
        config = load_config(args.config)
    except OSError as exc:
        raise DataError(str(exc)) from None
    except ConfigError as exc:
        raise DataError(str(exc)) from None

    overrides = {}
    if args.workers is not None:
        overrides["workers"] = args.workers
    if args.output is not None:
        overrides["output"] = args.output
    if args.format is not None:
        overrides["format"] = args.format
    if overrides:
        try:
            config = replace(config, **overrides)
        except ValueError as exc:
            raise UsageError(str(exc)) from None

    result = run_sweep(config)
    with _open_out(config.output) as fp:
        fp.write(result.rendered(config.format))
    return EXIT_OK


def _cmd_bench(args) -> int:
    if args.trials < 1:
        raise UsageError(f"--trials must be >= 1, got {args.trials}")
    if args.n < 1:
        raise UsageError(f"--n must be >= 1, got {args.n}")
    estimators = tuple(EstimatorSpec(e) for e in ESTIMATOR_IDS)
    rows = run_bench(estimators, series_length=args.n, trials=args.trials)
    sys.stdout.write(bench_to_csv(rows))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except EstimatorError as exc:
        print(f"estimator error: {exc}", file=sys.stderr)
        return EXIT_ESTIMATOR


def entry_point() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry_point()
