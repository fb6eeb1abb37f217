#!/usr/bin/env python3
"""Tabulate radial weight profiles across levels.

Prints log10 of the weight on a log-spaced grid, one column per level,
plus the relative drop per decade.  Useful for eyeballing how fast the
higher-level weights decay and where the interpolation table spends its
nodes.

    python3 scripts/kernel_profiles.py --levels 1 2 3 4 --x-min 1e-6 --x-max 1e4
"""

import argparse
import math
import sys

import numpy as np

sys.path.insert(0, "src")

from genfock.radialkernel import build_table, log_radial_weight, moment


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--levels", type=int, nargs="+", default=[1, 2, 3, 4])
    ap.add_argument("--x-min", type=float, default=1e-6)
    ap.add_argument("--x-max", type=float, default=1e4)
    ap.add_argument("--points", type=int, default=21)
    ap.add_argument("--moments", type=int, default=0,
                    help="also print the first N moments per level")
    args = ap.parse_args(argv)

    for m in args.levels:
        build_table(m)

    xs = np.geomspace(args.x_min, args.x_max, args.points)
    header = "x".rjust(12) + "".join(f"  log10 K_{m}".rjust(14)
                                     for m in args.levels)
    print(header)
    for x in xs:
        row = f"{x:12.4e}"
        for m in args.levels:
            row += f"{log_radial_weight(m, float(x)) / math.log(10):14.6f}"
        print(row)

    if args.moments:
        print()
        print("moments (should be the factorial powers)")
        for m in args.levels:
            vals = [moment(m, n) for n in range(args.moments)]
            rels = [abs(v - math.factorial(n) ** m) / math.factorial(n) ** m
                    for n, v in enumerate(vals)]
            print(f"  level {m}: worst rel {max(rels):.2e} over n<{args.moments}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
