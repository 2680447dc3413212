"""Run every suite over a few seeds and write one JSON report per (suite, seed).

    python3 scripts/run_all_suites.py --samples 1000000 --seeds 42 43 44 --outdir reports/
"""
import argparse
from pathlib import Path

from octbergman.report import emit_report
from octbergman.suites import SUITES, SuiteConfig, run_suite


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=200_000)
    ap.add_argument("--seeds", type=int, nargs="+", default=[42])
    ap.add_argument("--strategy", default="mc", choices=("mc", "qmc", "exact"))
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--outdir", type=Path, default=Path("reports"))
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)

    failures = 0
    for seed in args.seeds:
        cfg = SuiteConfig(seed=seed, n_samples=args.samples, strategy=args.strategy, workers=args.workers)
        for name in SUITES:
            rep = run_suite(name, cfg, timing=True)
            emit_report(rep, "json", args.outdir / f"{name}_seed{seed}.json")
            bad = [c.id for c in rep.checks if not c.passed]
            failures += len(bad)
            print(f"seed={seed:<5d} {name:<15s} {len(rep.checks):3d} rows  {rep.runtime_ms / 1e3:7.1f}s  "
                  + ("ok" if not bad else "FAIL " + " ".join(bad)))
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
