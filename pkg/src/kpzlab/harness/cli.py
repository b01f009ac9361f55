"""Command-line interface.

Exit codes: 0 = all assertions pass, 1 = statistical failure,
2 = usage or configuration error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from kpzlab.errors import KpzLabError
from kpzlab.harness.experiments import (EXPERIMENTS, ExperimentConfig,
                                        run_experiment)
from kpzlab.harness.io import read_config, write_csv

__all__ = ["main"]


def _int_tuple(text: str) -> tuple:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated ints: {text!r}")


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0,
                        help="root seed for all randomness (default 0)")
    common.add_argument("--workers", type=int, default=1,
                        help="worker processes for seed-parallel work")
    common.add_argument("--out", default=None,
                        help="output directory (CSV + JSON manifest)")
    common.add_argument("--config", default=None,
                        help="JSON file of parameter overrides")

    top = argparse.ArgumentParser(
        prog="kpzlab",
        description="Numerical laboratory for the KPZ universality class.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate-asep", parents=[common],
                       help="run one exclusion-process trajectory")
    p.add_argument("--p", type=float, default=0.0, help="left-jump rate")
    p.add_argument("--t", type=float, default=100.0, help="time horizon")
    p.add_argument("--window", type=int, default=None,
                   help="half-width of the window lattice (default: auto)")
    p.add_argument("--ring", type=int, default=None,
                   help="ring of this many sites instead of a window")
    p.add_argument("--particles", type=int, default=None,
                   help="particle count for ring initial data")
    p.add_argument("--density", type=float, default=None,
                   help="Bernoulli density instead of step initial data")

    p = sub.add_parser("exact-prob", parents=[common],
                       help="exact transition probability (contour formula)")
    p.add_argument("--y", type=_int_tuple, required=True,
                   help="initial configuration, e.g. -1,0,2")
    p.add_argument("--x", type=_int_tuple, required=True,
                   help="target configuration")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--p", type=float, default=0.0, help="left-jump rate")
    p.add_argument("--oracle", action="store_true",
                   help="also evaluate the uniformization oracle")

    p = sub.add_parser("bethe", parents=[common],
                       help="solve the ring Bethe equations")
    p.add_argument("--n", type=int, required=True, help="particle count")
    p.add_argument("--length", type=int, required=True, help="ring size")
    p.add_argument("--p", type=float, default=0.3, help="left-jump rate")

    p = sub.add_parser("gue-spectrum", parents=[common],
                       help="sample GUE spectra")
    p.add_argument("--n", type=int, default=500)
    p.add_argument("--samples", type=int, default=1)

    p = sub.add_parser("coulomb-mcmc", parents=[common],
                       help="Metropolis sampling of the eigenvalue gas")
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--steps", type=int, default=1_000_000)

    p = sub.add_parser("trace-moments", parents=[common],
                       help="Monte Carlo vs exact Wick trace moments")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--j", type=int, default=4)
    p.add_argument("--samples", type=int, default=20000)

    p = sub.add_parser("tw-cdf", parents=[common],
                       help="tabulate the Tracy-Widom F2 distribution")
    p.add_argument("--s-min", type=float, default=-10.0)
    p.add_argument("--s-max", type=float, default=8.0)
    p.add_argument("--step", type=float, default=0.01)

    p = sub.add_parser("toprec", parents=[common],
                       help="exact topological-recursion correlators")
    p.add_argument("--genus", type=int, default=1)
    p.add_argument("--points", type=int, default=1)
    p.add_argument("--moments", type=int, default=None, metavar="J_MAX",
                   help="print genus moments m_{2j} for j <= J_MAX instead")

    p = sub.add_parser("run-experiment", parents=[common],
                       help="run a named acceptance experiment")
    p.add_argument("experiment", choices=sorted(EXPERIMENTS))
    p.add_argument("--param", action="append", default=[], metavar="KEY=VAL",
                   help="override one experiment parameter")

    return top


def _overrides(args) -> dict:
    params = {}
    if args.config:
        params.update(read_config(args.config))
    for item in getattr(args, "param", []):
        if "=" not in item:
            raise KpzLabError(f"--param expects KEY=VAL, got {item!r}")
        key, val = item.split("=", 1)
        try:
            params[key] = int(val)
        except ValueError:
            try:
                params[key] = float(val)
            except ValueError:
                params[key] = val
    return params


def _cmd_simulate_asep(args) -> int:
    import math

    from kpzlab.asep import (Bernoulli, InfiniteWindow, Rates, Ring, Step,
                             build_initial, simulate)
    rates = Rates(p=args.p, q=1.0 - args.p)
    if args.ring is not None:
        if args.particles is None:
            raise KpzLabError("--ring requires --particles")
        from kpzlab.asep import Explicit
        lattice = Ring(args.ring)
        cfg = build_initial(lattice, Explicit(tuple(range(args.particles))))
    else:
        half = args.window
        if half is None:
            half = int(args.t + 8.0 * math.sqrt(args.t) + 20.0) + 1
        lattice = InfiniteWindow(-half, half)
        if args.density is not None:
            cfg = build_initial(lattice, Bernoulli(args.density, seed=args.seed))
        else:
            cfg = build_initial(lattice, Step())
    traj = simulate(cfg, rates, args.t, args.seed, record_events=False)
    print(f"t={args.t} p={args.p} particles={len(cfg.positions)} "
          f"h(t,0)={traj.h0_final}")
    if args.out:
        rows = [(i, pos) for i, pos in enumerate(sorted(traj.final_positions))]
        path = write_csv(f"{args.out}/final_positions.csv",
                         ("index", "position"), rows)
        print(f"wrote {path}")
    return 0


def _cmd_exact_prob(args) -> int:
    from kpzlab.asep import Rates
    from kpzlab.exact import (delta_distribution, master_evolve,
                              transition_probability, window_generator)
    rates = Rates(p=args.p, q=1.0 - args.p)
    prob = transition_probability(args.y, args.x, args.t, rates)
    print(f"P_y(x; t) = {prob!r}")
    if args.oracle:
        margin = int(args.t + 8.0 * args.t**0.5 + 24.0)
        lo = min(min(args.y), min(args.x)) - margin
        hi = max(max(args.y), max(args.x)) + margin
        gen = window_generator(len(args.y), lo, hi, rates)
        pi = master_evolve(gen, delta_distribution(gen, tuple(args.y)), args.t)
        oracle = float(pi[gen.index[tuple(sorted(args.x))]])
        print(f"uniformization oracle = {oracle!r}  "
              f"|difference| = {abs(prob - oracle):.3e}")
        if abs(prob - oracle) >= 1e-8:
            return 1
    return 0


def _cmd_bethe(args) -> int:
    from kpzlab.asep import Rates
    from kpzlab.exact import (bethe_solve, eigenpair_residual, ring_generator,
                              spectrum_coverage)
    rates = Rates(p=args.p, q=1.0 - args.p)
    sols = bethe_solve(args.n, args.length, rates)
    gen = ring_generator(args.n, args.length, rates)
    worst = 0.0
    for sol in sols:
        res = eigenpair_residual(sol, gen)
        worst = max(worst, res)
        roots = ", ".join(f"{z:.6f}" for z in sol.roots)
        print(f"E = {sol.eigenvalue:.12f}  residual = {res:.2e}  "
              f"roots = [{roots}]")
    cov = spectrum_coverage(sols, gen)
    print(f"solutions = {len(sols)}  worst residual = {worst:.2e}  "
          f"spectrum coverage = {cov:.3f}")
    return 0 if sols and worst < 1e-8 else 1


def _cmd_gue_spectrum(args) -> int:
    import math

    from kpzlab.harness.stats import ks_distance
    from kpzlab.rmt import (edge_rescale, eigenvalues, sample_gue,
                            semicircle_cdf)
    rng = np.random.default_rng(args.seed)
    edges = []
    rows = []
    first_ks = None
    for i in range(args.samples):
        spec = eigenvalues(sample_gue(args.n, rng=rng))
        edges.append(edge_rescale(spec))
        rescaled = np.sort(spec.eigenvalues / math.sqrt(args.n))
        if first_ks is None:
            first_ks = ks_distance(rescaled, semicircle_cdf).d
        rows.extend((i, v) for v in rescaled)
    edges = np.asarray(edges)
    print(f"n={args.n} samples={args.samples} "
          f"semicircle KS (first draw) = {first_ks:.4f}")
    if args.samples > 1:
        print(f"edge statistic: mean = {np.mean(edges):.4f} "
              f"std = {np.std(edges, ddof=1):.4f}")
    if args.out:
        path = write_csv(f"{args.out}/spectra.csv",
                         ("sample", "eigenvalue_rescaled"), rows)
        print(f"wrote {path}")
    return 0


def _cmd_coulomb_mcmc(args) -> int:
    from kpzlab.harness.stats import ks_distance
    from kpzlab.rmt import metropolis_sample, semicircle_cdf
    chain = metropolis_sample(args.n, args.steps, seed=args.seed)
    pooled = chain.pooled_rescaled()
    ks = ks_distance(pooled, semicircle_cdf)
    print(f"n={args.n} steps={args.steps} acceptance={chain.acceptance:.3f} "
          f"semicircle KS (pooled) = {ks.d:.4f}")
    if args.out:
        path = write_csv(f"{args.out}/coulomb_pooled.csv",
                         ("index", "value"),
                         list(enumerate(pooled)))
        print(f"wrote {path}")
    return 0


def _cmd_trace_moments(args) -> int:
    from kpzlab.rmt import trace_moment, trace_moment_exact
    exact = trace_moment_exact(args.n, args.j)
    est, stderr = trace_moment(args.n, args.j, args.samples, seed=args.seed)
    pull = abs(est - exact) / stderr if stderr > 0 else 0.0
    print(f"E[Tr M^{args.j}] at n={args.n}: exact = {exact}, "
          f"MC = {est:.4f} +/- {stderr:.4f} ({pull:.2f} sigma)")
    return 0 if pull < 4.0 else 1


def _cmd_tw_cdf(args) -> int:
    from kpzlab.tw import build_f2, export_table, f2_moments
    dist = build_f2(args.s_min, args.s_max, args.step)
    mom = f2_moments(dist)
    print(f"F2 moments: mean = {mom.mean:.7f} variance = {mom.variance:.7f} "
          f"std = {mom.std:.7f}")
    if args.out:
        rows = export_table(dist)
        path = write_csv(f"{args.out}/f2_table.csv",
                         ("s", "q", "F2", "pdf"), rows)
        print(f"wrote {path}")
    return 0


def _cmd_toprec(args) -> int:
    import sympy as sp

    from kpzlab.toprec import correlator, genus_moment_row
    if args.moments is not None:
        row = genus_moment_row(args.genus, args.moments)
        print(f"g={args.genus} moments m_2j, j=0..{args.moments}: "
              f"{[int(m) for m in row]}")
    else:
        expr = sp.factor(correlator(args.genus, args.points))
        print(f"W_{{{args.genus},{args.points}}} = {expr}")
    return 0


def _cmd_run_experiment(args) -> int:
    cfg = ExperimentConfig(experiment=args.experiment,
                           params=_overrides(args), seed=args.seed,
                           workers=args.workers, out_dir=args.out)
    report = run_experiment(cfg)
    print(report.summary())
    for k, tol in report.tolerances.items():
        print(f"  tolerance {k} < {tol}")
    for path in report.artifacts:
        print(f"  wrote {path}")
    return 0 if report.passed else 1


_COMMANDS = {
    "simulate-asep": _cmd_simulate_asep,
    "exact-prob": _cmd_exact_prob,
    "bethe": _cmd_bethe,
    "gue-spectrum": _cmd_gue_spectrum,
    "coulomb-mcmc": _cmd_coulomb_mcmc,
    "trace-moments": _cmd_trace_moments,
    "tw-cdf": _cmd_tw_cdf,
    "toprec": _cmd_toprec,
    "run-experiment": _cmd_run_experiment,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except KpzLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
