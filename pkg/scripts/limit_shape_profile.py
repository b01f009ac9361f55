#!/usr/bin/env python3
"""Mean step-initial-data height profile vs the parabolic limit shape.

Writes plot-ready CSV (x, mean height, parabola, relative error) and prints
the worst relative error over the requested speed range.

Usage:
    python3 scripts/limit_shape_profile.py --t 200 --seeds 500 --out results/
"""

import argparse

from kpzlab.harness import ExperimentConfig, run_experiment


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--t", type=float, default=200.0)
    parser.add_argument("--seeds", type=int, default=500)
    parser.add_argument("--max-speed", type=float, default=0.8)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--out", default="results/limit-shape")
    args = parser.parse_args()

    report = run_experiment(ExperimentConfig(
        "limit-shape",
        params={"t": args.t, "seeds": args.seeds, "max_speed": args.max_speed},
        seed=args.seed, workers=args.workers, out_dir=args.out))
    print(report.summary())
    for path in report.artifacts:
        print(f"wrote {path}")
    return 0 if report.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
