#!/usr/bin/env python3
"""Sweep c_pq(s) on a grid and print how the normalised coefficients settle.

For each s the script tabulates (p+1)^{s+1}(q+1)^{s+1} c_pq(s) on 0 <= p, q <= pmax
and prints the max/min spread over dyadic windows [w, 2w]^2.  A spread that
stops changing as the window moves out is the numerical signature of the
two-sided growth estimate.  The full table can be saved as CSV.

Usage: python3 scripts/coefficient_sweep.py --n 2 --s -0.5 0 1 --pmax 32 [--csv out.csv]
"""

import argparse
import sys

from mhbesov import coeffs
from mhbesov.cli import SweepConfig, cmd_coeffs
from mhbesov.verify import window_spread


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--s", type=float, nargs="+", default=[-0.5, 0.0, 1.0])
    ap.add_argument("--pmax", type=int, default=32)
    ap.add_argument("--csv", help="also write the full table here")
    args = ap.parse_args(argv)

    windows = []
    w = 2
    while 2 * w <= args.pmax:
        windows.append((w, 2 * w))
        w *= 2
    print("s".rjust(6) + "".join(f"  [{a},{b}]^2".rjust(12) for a, b in windows))
    for s in sorted(args.s):
        table = coeffs.c_pq_table(args.n, [s], args.pmax, args.pmax)
        normalised = {(p, q): ((p + 1.0) * (q + 1.0)) ** (s + 1.0) * res.value
                      for (p, q, _), res in table.items()}
        print(f"{s:6g}" + "".join(f"{window_spread(normalised, a, b):12.5f}" for a, b in windows))
    if args.csv:
        cmd_coeffs(SweepConfig(args.n, list(args.s), args.pmax, args.pmax, out=args.csv))
        print(f"table written to {args.csv}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
