#!/usr/bin/env python3
"""Tabulate the Tracy-Widom F2 distribution to CSV and print its moments.

Usage:
    python3 scripts/tw_table.py --out results/
"""

import argparse

from kpzlab.harness import write_csv
from kpzlab.tw import build_f2, export_table, f2_moments


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results")
    parser.add_argument("--s-min", type=float, default=-10.0)
    parser.add_argument("--s-max", type=float, default=8.0)
    parser.add_argument("--step", type=float, default=0.01)
    args = parser.parse_args()

    dist = build_f2(args.s_min, args.s_max, args.step)
    mom = f2_moments(dist)
    print(f"mean = {mom.mean:.10f}")
    print(f"variance = {mom.variance:.10f}")
    print(f"std = {mom.std:.10f}")
    path = write_csv(f"{args.out}/f2_table.csv", ("s", "q", "F2", "pdf"),
                     export_table(dist))
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
