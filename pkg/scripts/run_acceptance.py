#!/usr/bin/env python3
"""Run every named acceptance experiment and print one line per result.

Usage:
    python3 scripts/run_acceptance.py [--out DIR] [--skip-slow] [--workers N]

Exit code 0 if every experiment passes, 1 otherwise.
"""

import argparse
import sys
import time

from kpzlab.harness import EXPERIMENTS, ExperimentConfig, run_experiment

# (experiment, seed) in acceptance-criteria order
RUNS = [
    ("semicircle-ks", 7),
    ("tw-edge", 5),
    ("tw-moments", 0),
    ("exact-asep", 11),
    ("bethe-spectrum", 0),
    ("stationarity", 0),
    ("limit-shape", 1),
    ("one-point-f2", 1),
    ("catalan-bridge", 0),
    ("genus-wick", 3),
    ("coulomb-ks", 5),
]

SLOW = {"one-point-f2"}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=None, help="artifact directory root")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--skip-slow", action="store_true",
                        help=f"skip the long experiments: {sorted(SLOW)}")
    args = parser.parse_args()

    all_passed = True
    for name, seed in RUNS:
        if args.skip_slow and name in SLOW:
            print(f"[SKIP] {name}")
            continue
        out_dir = f"{args.out}/{name}" if args.out else None
        started = time.time()
        report = run_experiment(ExperimentConfig(
            name, seed=seed, workers=args.workers, out_dir=out_dir))
        print(f"{report.summary()}  ({time.time() - started:.1f}s)")
        all_passed &= report.passed
    return 0 if all_passed else 1


if __name__ == "__main__":
    sys.exit(main())
