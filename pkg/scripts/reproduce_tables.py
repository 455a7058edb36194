#!/usr/bin/env python3
"""Recompute the classification tables from scratch, with per-row timing.

Runs the census with invariants for a range of t and prints every row as
it lands, so a long run shows progress.  t = 8 for p = 3 takes a few
minutes; t >= 9 representatives that exceed the byte budget are marked
skipped rather than attempted.

    python3 scripts/reproduce_tables.py --p 3 --t-min 4 --t-max 7
    python3 scripts/reproduce_tables.py --p 3 --t-min 8 --t-max 8 --threads 2
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from ghcodes import DEFAULT_BUDGET_BYTES, census, isolated_types


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--t-min", type=int, default=4)
    ap.add_argument("--t-max", type=int, default=7)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--budget-bytes", type=int, default=DEFAULT_BUDGET_BYTES)
    ap.add_argument("--no-invariants", action="store_true", help="chain algebra only, no rank/kernel")
    args = ap.parse_args()

    for t in range(args.t_min, args.t_max + 1):
        t0 = time.perf_counter()
        c = census(
            t,
            args.p,
            with_invariants=not args.no_invariants,
            budget_bytes=args.budget_bytes,
            threads=args.threads,
        )
        dt = time.perf_counter() - t0
        print(f"# p={args.p} t={t}  classes={c.class_count}  ({dt:.1f}s)")
        for row in c.rows:
            ts = ",".join(map(str, row.ts))
            rep = ",".join(map(str, row.representative))
            if row.linear:
                tail = "linear"
            elif row.skipped:
                tail = "skipped"
            elif row.r is not None:
                tail = f"(r,k)=({row.r},{row.k})"
            else:
                tail = "-"
            print(f"  s={row.s}  ({ts})  rep=({rep}) pos={row.position}/{row.chain_len}  {tail}")
        if c.skipped_reps:
            skipped = "; ".join(",".join(map(str, ts)) for ts in c.skipped_reps)
            print(f"  ! representatives over budget: {skipped}")

    iso = isolated_types(args.t_max, args.p)
    print(f"# isolated types, p={args.p}, t <= {args.t_max}")
    for t in sorted(iso):
        listing = "  ".join("(" + ",".join(map(str, ts)) + ")" for ts in iso[t])
        print(f"  t={t}  {listing}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
