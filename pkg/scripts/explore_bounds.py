#!/usr/bin/env python3
"""Sweep the counting bounds over t and cross-check them against the census.

For each t: the number of types over all levels, the same restricted to
chain representatives, the class-count bounds, and the census's own
distinct-class count (which must equal the representative bound).  Any
disagreement with previously reported numbers is printed at the end.

    python3 scripts/explore_bounds.py --p 3 --t-max 12
    python3 scripts/explore_bounds.py --p 2 --t-max 14 --with-lower
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from ghcodes import bounds_report, census


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--t-min", type=int, default=3)
    ap.add_argument("--t-max", type=int, default=10)
    ap.add_argument("--with-lower", action="store_true", help="add the distinct-(r,k) lower bound (materializes codes)")
    args = ap.parse_args()

    t0 = time.perf_counter()
    report = bounds_report(args.p, args.t_min, args.t_max, with_lower=args.with_lower)
    print(f"p={args.p}  ({time.perf_counter() - t0:.2f}s)")
    print(f"{'t':>3} {'types(all s)':>13} {'classes(all s)*':>16} {'types(reps)':>12} {'classes(reps)*':>15} {'census':>7} {'lower':>6}")
    for row in report.rows:
        cls = census(row.t, args.p).class_count
        consistent = "" if cls == row.types_reps else "  <- census disagrees with the type count"
        lower = "-"
        if row.lower_rk is not None:
            lower = f"{row.lower_rk}{'+' if row.lower_rk_partial else ''}"
        print(
            f"{row.t:>3} {row.types_all_s:>13} {row.classes_all_s:>16} "
            f"{row.types_reps:>12} {row.classes_reps:>15} {cls:>7} {lower:>6}{consistent}"
        )
    print(f"* {report.assumption}")
    for note in report.discrepancies:
        print(f"note: {note}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
