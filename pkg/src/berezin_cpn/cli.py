"""Command-line harness: ``berezin-cpn <experiment> [options]``.

Exit status is 0 when the experiment passes, 1 when it fails and 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .core import DEFAULT_TOL
from .experiments import EXPERIMENTS, ExperimentConfig, emit_report, run_experiment

log = logging.getLogger("berezin_cpn")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="berezin-cpn", description=__doc__.splitlines()[0])
    parser.add_argument("experiment", choices=sorted(EXPERIMENTS), help="experiment to run")
    parser.add_argument("--n", type=int, default=1, help="complex dimension of CP^n")
    parser.add_argument("--level", type=int, default=3, help="line-bundle level N (h = 1/N)")
    parser.add_argument("--radial", type=int, default=None, help="Gauss-Legendre points (default 2N+4)")
    parser.add_argument("--angular", type=int, default=None, help="trapezoid angles (default 4N+4)")
    parser.add_argument("--tol", type=float, default=DEFAULT_TOL)
    parser.add_argument("--pairs", type=int, default=500, help="random pairs for sampling experiments")
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--out", default="-", help="output path, '-' for stdout")
    parser.add_argument("--deterministic", action=argparse.BooleanOptionalAction, default=True,
                        help="byte-stable report (wall time recorded as 0)")
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(message)s", stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        config = ExperimentConfig(n=args.n, N=args.level, radial=args.radial, angular=args.angular,
                                  tol=args.tol, pairs=args.pairs, seed=args.seed)
        config.model
        if args.tol <= 0 or args.pairs < 1:
            raise ValueError("--tol must be positive and --pairs at least 1")
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        log.error("invalid configuration: %s", exc)
        return 2
    try:
        report = run_experiment(args.experiment, config, deterministic=args.deterministic)
    except ValueError as exc:
        log.error("invalid configuration: %s", exc)
        return 2
    try:
        emit_report(report, args.format, args.out)
    except OSError as exc:
        log.error("cannot write report: %s", exc)
        return 1
    log.info("%s: %s", args.experiment, "pass" if report.passed else "FAIL")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
