"""Command-line entry point: ``octbergman --suite bergman --samples 1000000``."""
from __future__ import annotations

import argparse
import sys

from .report import emit_report, lines
from .suites import SEED_ENV, SUITES, SuiteConfig, default_seed, run_suite


def _point(text: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of reals: {text!r}")
    if len(vals) != 8:
        raise argparse.ArgumentTypeError(f"--point-a needs 8 comma-separated reals, got {len(vals)}")
    return vals


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="octbergman",
        description="Numerical verification of octonionic Szego and Bergman kernel identities.",
        epilog=f"The default seed can be overridden with the {SEED_ENV} environment variable.",
    )
    p.add_argument("--suite", default="all", choices=SUITES + ("all",))
    p.add_argument("--samples", type=int, default=1_000_000, help="quadrature sample count")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--strategy", choices=("mc", "qmc", "exact"), default="mc")
    p.add_argument("--h", type=float, default=1e-3, help="finite-difference base step")
    p.add_argument("--richardson", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--max-degree", type=int, default=8, help="truncation degree K of spherical expansions")
    p.add_argument("--point-a", type=_point, default=None, help="reproducing point: 8 comma-separated reals")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--timing", action="store_true", help="record runtime_ms (breaks byte-identical output)")
    p.add_argument("-q", "--quiet", action="store_true", help="no pass/fail summary on stderr")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.h <= 0:
        parser.error("--h must be positive")
    if args.samples <= 0:
        parser.error("--samples must be positive")
    if args.workers <= 0:
        parser.error("--workers must be positive")
    if args.max_degree < 0:
        parser.error("--max-degree must be nonnegative")
    try:
        cfg = SuiteConfig(
            seed=default_seed() if args.seed is None else args.seed,
            n_samples=args.samples,
            strategy=args.strategy,
            h=args.h,
            richardson=args.richardson,
            max_degree=args.max_degree,
            point_a=args.point_a,
            workers=args.workers,
        )
    except ValueError as exc:
        parser.error(str(exc))
    report = run_suite(args.suite, cfg, timing=args.timing)
    emit_report(report, args.format, args.out, stream=None if args.out else sys.stdout)
    if not args.quiet:
        print(lines(report.checks), file=sys.stderr)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
