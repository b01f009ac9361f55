"""Named, reproducible experiments tying simulation to exact theory.

Each experiment compares a measured statistic against a reference with an
explicit tolerance and returns an :class:`ExperimentReport` carrying both,
so the report is meaningful whether or not it passes.  Tolerances are
recorded next to the measured values in every report and artifact.

Determinism contract: given a fixed config, a run is bit-for-bit
reproducible.  All randomness flows through per-seed substreams derived from
the root seed by counter-based splitting; results are merged in substream
index order, so the output is independent of the worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from kpzlab.errors import InvalidConfigError
from kpzlab.harness.io import write_csv, write_manifest
from kpzlab.harness.stats import ks_distance, ks_two_sample

__all__ = [
    "ExperimentConfig",
    "ExperimentReport",
    "EXPERIMENTS",
    "run_experiment",
]

# Reference constants for the Tracy-Widom (beta = 2) distribution.  The
# second constant is the variance; its square root is approx 0.901773.
TW_MEAN = -1.771086807411
TW_VARIANCE = 0.8131947928329


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully determines one experiment run."""

    experiment: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    workers: int = 1
    out_dir: str | None = None

    def __post_init__(self):
        if self.workers < 1:
            raise InvalidConfigError(f"workers must be >= 1, got {self.workers}")
        if self.experiment not in EXPERIMENTS:
            raise InvalidConfigError(
                f"unknown experiment {self.experiment!r}; "
                f"known: {', '.join(sorted(EXPERIMENTS))}")
        unknown = set(self.params) - set(_DEFAULTS[self.experiment])
        if unknown:
            raise InvalidConfigError(
                f"unknown parameters for {self.experiment}: {sorted(unknown)}")

    def param(self, name):
        return self.params.get(name, _DEFAULTS[self.experiment][name])


@dataclass(frozen=True)
class ExperimentReport:
    """Pass/fail outcome with every measured statistic and its tolerance."""

    experiment: str
    passed: bool
    measured: dict
    tolerances: dict
    seed: int
    artifacts: tuple = ()

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        parts = [f"{k}={v:.6g}" if isinstance(v, float) else f"{k}={v}"
                 for k, v in self.measured.items()]
        return f"[{status}] {self.experiment}: " + ", ".join(parts)


# --------------------------------------------------------------------------
# seed plumbing and worker pool
# --------------------------------------------------------------------------

def _substreams(root_seed: int, count: int) -> np.ndarray:
    from kpzlab.asep import spawn_seeds
    return spawn_seeds(root_seed, count)


def _map_ordered(fn, items, workers: int):
    """Apply ``fn`` over ``items``, merged in index order.

    Results are identical for any worker count because each item carries its
    own seed substream.
    """
    if workers <= 1:
        return [fn(it) for it in items]
    chunk = max(1, len(items) // (8 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def _step_window_config(t: float):
    """Step initial data on a window wide enough that, for totally
    right-moving dynamics run to time ``t``, boundary effects on the origin
    are below Poisson-tail 1e-16."""
    from kpzlab.asep import InfiniteWindow, Step, build_initial
    reach = int(t + 8.0 * math.sqrt(t) + 20.0)
    window = InfiniteWindow(-reach - 1, reach + 1)
    return build_initial(window, Step())


def _h0_for_seed(args):
    from kpzlab.asep import Rates, simulate
    t, seed = args
    cfg = _step_window_config(t)
    traj = simulate(cfg, Rates(p=0.0, q=1.0), t, int(seed), record_events=False)
    return traj.h0_final


def _profile_for_seed(args):
    from kpzlab.asep import Rates, height_from_state, simulate
    t, x_lo, x_hi, seed = args
    cfg = _step_window_config(t)
    traj = simulate(cfg, Rates(p=0.0, q=1.0), t, int(seed), record_events=False)
    hf = height_from_state(traj.final_positions, traj.h0_final,
                           cfg.lattice, t, x_lo, x_hi)
    return hf.values


# --------------------------------------------------------------------------
# experiments
# --------------------------------------------------------------------------

def _semicircle_ks(cfg: ExperimentConfig):
    from kpzlab.rmt import eigenvalues, sample_gue, semicircle_cdf
    n = int(cfg.param("n"))
    tol = float(cfg.param("tol"))
    spec = eigenvalues(sample_gue(n, seed=cfg.seed))
    rescaled = np.sort(spec.eigenvalues / math.sqrt(n))
    ks = ks_distance(rescaled, semicircle_cdf)
    measured = {"ks_distance": ks.d, "n": n}
    rows = [(i, v) for i, v in enumerate(rescaled)]
    return ks.d < tol, measured, {"ks_distance": tol}, [
        ("eigenvalues.csv", ("index", "eigenvalue_rescaled"), rows)]


def _tw_edge(cfg: ExperimentConfig):
    from kpzlab.rmt import edge_ensemble
    n = int(cfg.param("n"))
    samples = int(cfg.param("samples"))
    mean_tol = float(cfg.param("mean_tol"))
    std_tol = float(cfg.param("std_tol"))
    vals = edge_ensemble(n, samples, seed=cfg.seed)
    mean, std = float(np.mean(vals)), float(np.std(vals, ddof=1))
    measured = {"mean": mean, "std": std, "n": n, "samples": samples,
                "mean_error": abs(mean - TW_MEAN),
                "std_error": abs(std - TW_VARIANCE)}
    passed = (abs(mean - TW_MEAN) < mean_tol
              and abs(std - TW_VARIANCE) < std_tol)
    rows = [(i, v) for i, v in enumerate(vals)]
    return passed, measured, {"mean_error": mean_tol, "std_error": std_tol}, [
        ("edge_rescaled.csv", ("index", "value"), rows)]


def _tw_moments(cfg: ExperimentConfig):
    from kpzlab.tw import build_f2, f2_moments
    tol = float(cfg.param("tol"))
    dist = build_f2()
    mom = f2_moments(dist)
    measured = {"mean": mom.mean, "variance": mom.variance, "std": mom.std,
                "mean_error": abs(mom.mean - TW_MEAN),
                "variance_error": abs(mom.variance - TW_VARIANCE)}
    passed = (measured["mean_error"] < tol and measured["variance_error"] < tol)
    return passed, measured, {"mean_error": tol, "variance_error": tol}, []


def _exact_asep(cfg: ExperimentConfig):
    from kpzlab.asep import Rates
    from kpzlab.exact import (delta_distribution, master_evolve,
                              transition_probability, window_generator,
                              window_normalization)
    cases = int(cfg.param("cases"))
    tol = float(cfg.param("tol"))
    norm_tol = float(cfg.param("norm_tol"))
    rng = np.random.default_rng(cfg.seed)
    margin = 28
    worst = 0.0
    rows = []
    for c in range(cases):
        n_part = 1 + c % 3
        p = float(rng.choice([0.0, 0.25, 0.5]))
        rates = Rates(p=p, q=1.0 - p)
        t = float(rng.uniform(0.2, 2.0))
        y = tuple(sorted(rng.choice(np.arange(-5, 6), size=n_part,
                                    replace=False).tolist()))
        lo, hi = min(y) - margin, max(y) + margin
        gen = window_generator(n_part, lo, hi, rates)
        pi = master_evolve(gen, delta_distribution(gen, y), t)
        # a target reachable with non-negligible mass: jitter the start
        for _ in range(100):
            x = tuple(sorted((np.asarray(y) + rng.integers(-2, 3,
                              size=n_part)).tolist()))
            if len(set(x)) == n_part and min(x) > lo and max(x) < hi:
                break
        else:
            raise InvalidConfigError("could not draw a distinct target")
        oracle = float(pi[gen.index[x]])
        prob = transition_probability(y, x, t, rates)
        err = abs(prob - oracle)
        worst = max(worst, err)
        rows.append((c, n_part, p, t, str(y), str(x), prob, oracle, err))
    norm_errs = {}
    for n_part, y in ((1, (0,)), (2, (-1, 1)), (3, (-2, 0, 1))):
        rates = Rates(p=0.25, q=0.75)
        norm = window_normalization(y, 1.0, rates)
        norm_errs[f"norm_error_N{n_part}"] = abs(norm - 1.0)
    measured = {"max_abs_error": worst, "cases": cases, **norm_errs}
    passed = worst < tol and all(v < norm_tol for v in norm_errs.values())
    tols = {"max_abs_error": tol,
            **{k: norm_tol for k in norm_errs}}
    header = ("case", "N", "p", "t", "initial", "target",
              "contour", "uniformization", "abs_error")
    return passed, measured, tols, [("transition_probabilities.csv",
                                     header, rows)]


def _bethe_spectrum(cfg: ExperimentConfig):
    from kpzlab.asep import Rates
    from kpzlab.exact import bethe_solve, eigenpair_residual, ring_generator
    res_tol = float(cfg.param("residual_tol"))
    eig_tol = float(cfg.param("eigenvalue_tol"))
    worst_res, worst_eig, total = 0.0, 0.0, 0
    rows = []
    for L in (4, 5, 6):
        for p in (0.3, 0.5):
            rates = Rates(p=p, q=1.0 - p)
            gen = ring_generator(2, L, rates)
            dense_eigs = np.linalg.eigvals(gen.dense())
            for sol in bethe_solve(2, L, rates):
                res = eigenpair_residual(sol, gen)
                gap = float(np.min(np.abs(dense_eigs - sol.eigenvalue)))
                worst_res = max(worst_res, res)
                worst_eig = max(worst_eig, gap)
                total += 1
                rows.append((L, p, str(sol.roots), res, gap))
    measured = {"solutions": total, "max_pair_residual": worst_res,
                "max_eigenvalue_gap": worst_eig}
    passed = total > 0 and worst_res < res_tol and worst_eig < eig_tol
    return passed, measured, {"max_pair_residual": res_tol,
                              "max_eigenvalue_gap": eig_tol}, [
        ("bethe_solutions.csv",
         ("L", "p", "roots", "pair_residual", "eigenvalue_gap"), rows)]


def _stationarity(cfg: ExperimentConfig):
    from kpzlab.asep import Rates
    from kpzlab.exact import ring_generator
    tol = float(cfg.param("tol"))
    worst = 0.0
    measured = {}
    for n_part, L in ((2, 5), (3, 7)):
        gen = ring_generator(n_part, L, Rates(p=0.3, q=0.7))
        pi = np.full(len(gen.states), 1.0 / len(gen.states))
        resid = float(np.max(np.abs(gen.matrix.T @ pi)))
        measured[f"residual_N{n_part}_L{L}"] = resid
        worst = max(worst, resid)
    return worst < tol, measured, {k: tol for k in measured}, []


def _limit_shape(cfg: ExperimentConfig):
    t = float(cfg.param("t"))
    seeds_n = int(cfg.param("seeds"))
    tol = float(cfg.param("tol"))
    speed = float(cfg.param("max_speed"))
    x_max = int(speed * t)
    seeds = _substreams(cfg.seed, seeds_n)
    profiles = _map_ordered(
        _profile_for_seed, [(t, -x_max, x_max, s) for s in seeds], cfg.workers)
    mean_profile = np.mean(np.asarray(profiles), axis=0)
    xs = np.arange(-x_max, x_max + 1)
    target = t / 2.0 + xs**2 / (2.0 * t)
    rel = np.abs(mean_profile - target) / target
    worst = float(np.max(rel))
    measured = {"max_rel_error": worst, "t": t, "seeds": seeds_n,
                "mean_h_origin": float(mean_profile[x_max])}
    rows = list(zip(xs, mean_profile, target, rel))
    return worst < tol, measured, {"max_rel_error": tol}, [
        ("limit_shape.csv", ("x", "mean_height", "parabola", "rel_error"),
         rows)]


def _one_point_f2(cfg: ExperimentConfig):
    from kpzlab.asep import one_point_statistic
    from kpzlab.tw import build_f2, f2_cdf
    t = float(cfg.param("t"))
    samples = int(cfg.param("samples"))
    tol = float(cfg.param("tol"))
    seeds = _substreams(cfg.seed, samples)
    h0s = _map_ordered(_h0_for_seed, [(t, s) for s in seeds], cfg.workers)
    stats = np.array([-one_point_statistic(h0, t) for h0 in h0s])
    dist = build_f2()
    lo, hi = dist.grid[0], dist.grid[-1]
    clipped = np.clip(stats, lo + 1e-9, hi - 1e-9)
    ks = ks_distance(clipped, lambda s: f2_cdf(dist, s))
    measured = {"ks_distance": ks.d, "t": t, "samples": samples,
                "mean": float(np.mean(stats)), "std": float(np.std(stats))}
    rows = [(int(s), h, v) for s, h, v in zip(seeds, h0s, stats)]
    return ks.d < tol, measured, {"ks_distance": tol}, [
        ("one_point_statistic.csv", ("seed", "h_origin", "statistic"), rows)]


def _catalan_numbers(count: int) -> list:
    """Independent Catalan oracle via the convolution recurrence."""
    cat = [1]
    for k in range(count - 1):
        cat.append(sum(cat[i] * cat[k - i] for i in range(k + 1)))
    return cat


def _catalan_bridge(cfg: ExperimentConfig):
    import sympy as sp

    from kpzlab.rmt import semicircle_moment
    from kpzlab.toprec import catalan_sequence
    tol = float(cfg.param("moment_tol"))
    count = int(cfg.param("count"))
    coeffs = catalan_sequence(2 * count)  # [z^-1] .. [z^-2count]
    odd = [coeffs[2 * k] for k in range(count)]       # [z^-(2k+1)]
    even = [coeffs[2 * k + 1] for k in range(count)]  # [z^-(2k+2)]
    oracle = _catalan_numbers(count)
    exact_ok = (odd == [sp.Integer(c) for c in oracle]
                and all(e == 0 for e in even))
    moment_err = max(abs(semicircle_moment(2 * k) - oracle[k])
                     for k in range(count))
    measured = {"coefficients": str([int(c) for c in odd]),
                "exact_match": exact_ok, "max_moment_error": moment_err}
    passed = exact_ok and moment_err < tol
    return passed, measured, {"max_moment_error": tol}, []


def _genus_wick(cfg: ExperimentConfig):
    from kpzlab.rmt import (genus_moment_polynomial, trace_moment,
                            trace_moment_exact)
    from kpzlab.toprec import genus_moment
    samples = int(cfg.param("samples"))
    sigma_tol = float(cfg.param("sigma_tol"))
    rng = np.random.default_rng(cfg.seed)
    worst_sigma = 0.0
    rows = []
    for n in (2, 4, 8):
        for j in range(5):
            exact = trace_moment_exact(n, j)
            est, stderr = trace_moment(n, j, samples,
                                       seed=int(rng.integers(2**63)))
            pull = abs(est - exact) / stderr if stderr > 0 else 0.0
            worst_sigma = max(worst_sigma, pull)
            rows.append((n, j, exact, est, stderr, pull))
    # exact polynomial identity: sum_g n^{1-2g} [z^{-2j-1}] W_{g,1}
    # equals n^{-j} E[Tr M^{2j}] as a polynomial in n, for j <= 4
    identity_ok = True
    for j in range(1, 5):
        poly = genus_moment_polynomial(j)
        for g in range(j // 2 + 1):
            want = poly.get(j + 1 - 2 * g, 0)
            got = genus_moment(g, j) if g <= 2 else 0
            if got != want:
                identity_ok = False
    measured = {"max_pull_sigma": worst_sigma, "samples": samples,
                "identity_exact": identity_ok}
    passed = worst_sigma < sigma_tol and identity_ok
    return passed, measured, {"max_pull_sigma": sigma_tol}, [
        ("trace_moments.csv",
         ("n", "j", "exact", "estimate", "stderr", "pull_sigma"), rows)]


def _coulomb_ks(cfg: ExperimentConfig):
    from kpzlab.rmt import eigenvalues, metropolis_sample, sample_gue
    n = int(cfg.param("n"))
    steps = int(cfg.param("steps"))
    draws = int(cfg.param("matrix_draws"))
    tol = float(cfg.param("tol"))
    chain = metropolis_sample(n, steps, seed=cfg.seed)
    mcmc = chain.pooled_rescaled()
    rng = np.random.default_rng(cfg.seed + 1)
    pools = [eigenvalues(sample_gue(n, rng=rng)).eigenvalues / math.sqrt(n)
             for _ in range(draws)]
    matrix = np.concatenate(pools)
    ks = ks_two_sample(mcmc, matrix)
    measured = {"ks_two_sample": ks.d, "acceptance": chain.acceptance,
                "mcmc_points": int(mcmc.size), "matrix_points": int(matrix.size)}
    return ks.d < tol, measured, {"ks_two_sample": tol}, []


_DEFAULTS = {
    "semicircle-ks": {"n": 500, "tol": 0.05},
    "tw-edge": {"n": 100, "samples": 4000, "mean_tol": 0.1, "std_tol": 0.1},
    "tw-moments": {"tol": 1e-4},
    "exact-asep": {"cases": 20, "tol": 1e-8, "norm_tol": 1e-6},
    "bethe-spectrum": {"residual_tol": 1e-8, "eigenvalue_tol": 1e-9},
    "stationarity": {"tol": 1e-12},
    "limit-shape": {"t": 200.0, "seeds": 500, "tol": 0.02, "max_speed": 0.8},
    "one-point-f2": {"t": 1000.0, "samples": 5000, "tol": 0.06},
    "catalan-bridge": {"count": 6, "moment_tol": 1e-8},
    "genus-wick": {"samples": 20000, "sigma_tol": 3.0},
    "coulomb-ks": {"n": 20, "steps": 1_000_000, "matrix_draws": 500,
                   "tol": 0.05},
}

EXPERIMENTS = {
    "semicircle-ks": _semicircle_ks,
    "tw-edge": _tw_edge,
    "tw-moments": _tw_moments,
    "exact-asep": _exact_asep,
    "bethe-spectrum": _bethe_spectrum,
    "stationarity": _stationarity,
    "limit-shape": _limit_shape,
    "one-point-f2": _one_point_f2,
    "catalan-bridge": _catalan_bridge,
    "genus-wick": _genus_wick,
    "coulomb-ks": _coulomb_ks,
}


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """Run a named experiment; write CSV/JSON artifacts if an output
    directory is configured; return the pass/fail report."""
    passed, measured, tolerances, tables = EXPERIMENTS[cfg.experiment](cfg)
    artifacts = []
    if cfg.out_dir is not None:
        out = Path(cfg.out_dir)
        for name, header, rows in tables:
            artifacts.append(str(write_csv(out / name, header, rows)))
        manifest = {
            "experiment": cfg.experiment,
            "params": {k: cfg.param(k) for k in _DEFAULTS[cfg.experiment]},
            "seed": cfg.seed,
            "workers": cfg.workers,
            "passed": passed,
            "measured": measured,
            "tolerances": tolerances,
            "artifacts": [Path(a).name for a in artifacts],
        }
        artifacts.append(str(write_manifest(out / "manifest.json", manifest)))
    return ExperimentReport(experiment=cfg.experiment, passed=passed,
                            measured=measured, tolerances=tolerances,
                            seed=cfg.seed, artifacts=tuple(artifacts))
