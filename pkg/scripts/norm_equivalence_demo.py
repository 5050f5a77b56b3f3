#!/usr/bin/env python3
"""Compare the four equivalent norms on seeded random M-harmonic sums.

Prints, for each random function, the Bergman, tangential, Box-smoothed and
Hardy-smoothed norms and the extreme pairwise ratios.  The ratios stay
bounded as the degree grows, which is the content of the norm equivalence.

Usage: python3 scripts/norm_equivalence_demo.py [--n 2] [--s 0] [--count 8] [--degmax 8]
"""

import argparse
import sys

from mhbesov import mh


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--s", type=float, default=0.0)
    ap.add_argument("--m", type=int, default=1)
    ap.add_argument("--count", type=int, default=8)
    ap.add_argument("--degmax", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    print(f"{'#':>3} {'bergman':>12} {'tangential':>12} {'box':>12} {'hardy':>12} {'min ratio':>10} {'max ratio':>10}")
    for i in range(args.count):
        f = mh.random_mh_function(args.n, args.degmax, count=4, seed=args.seed + i)
        rep = mh.norm_report(f, args.s, args.m, float(args.m))
        ratios = list(rep.ratios.values())
        print(f"{i:3d} {rep.bergman_s:12.5g} {rep.tangential_m:12.5g} {rep.box_smoothed_t:12.5g} "
              f"{rep.hardy_smoothed:12.5g} {min(ratios):10.4f} {max(ratios):10.4f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
