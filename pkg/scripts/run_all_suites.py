#!/usr/bin/env python3
"""Run every verification suite and write one CSV report per suite.

Usage: python3 scripts/run_all_suites.py [--outdir reports] [--seed 0] [--only NAME ...]
"""

import argparse
import sys
import time
from pathlib import Path

from mhbesov import verify
from mhbesov.cli import render_reports


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--outdir", default="reports")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--only", nargs="*", choices=list(verify.SUITES), help="subset of suites")
    args = ap.parse_args(argv)

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    config = verify.VerifyConfig(seed=args.seed)
    all_ok = True
    for name in args.only or verify.SUITES:
        suite = verify.SUITES[name]
        t0 = time.perf_counter()
        reports = suite.run(config)
        elapsed = time.perf_counter() - t0
        (outdir / f"{name}.csv").write_text(render_reports(suite, reports, "csv"))
        passed = sum(r.passed for r in reports)
        all_ok &= passed == len(reports)
        print(f"{name:18s} {passed:4d}/{len(reports):<4d} passed  {elapsed:7.1f} s")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
