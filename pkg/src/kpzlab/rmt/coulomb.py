"""Metropolis sampling of the GUE eigenvalue (beta = 2 Coulomb gas) law

    P_n(y) proportional to exp( -1/2 sum y_i^2 + 2 sum_{j<k} log|y_j - y_k| )

in matrix units (y of order sqrt(n)).  Single-coordinate Gaussian proposals;
the step size is auto-tuned toward ~40% acceptance on short pilot runs; the
first 20% of each production chain is discarded as burn-in.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from ..errors import ConvergenceError, InvalidConfigError


def coulomb_log_density(y) -> float:
    """Log of the unnormalized density; coincident points are -inf."""
    y = np.asarray(y, dtype=np.float64)
    n = len(y)
    val = -0.5 * np.sum(y ** 2)
    for j in range(n):
        for k in range(j + 1, n):
            gap = abs(y[j] - y[k])
            if gap == 0.0:
                return -np.inf
            val += 2.0 * np.log(gap)
    return float(val)


@njit(cache=True)
def _mcmc_kernel(y, sigma, sweeps, thin, seed, out):
    np.random.seed(seed)
    n = y.shape[0]
    accepted = 0
    attempted = 0
    stored = 0
    for sweep in range(sweeps):
        for i in range(n):
            prop = y[i] + sigma * np.random.standard_normal()
            # log-ratio of the move: quadratic term + interaction with others
            delta = 0.5 * (y[i] * y[i] - prop * prop)
            ok = True
            for j in range(n):
                if j == i:
                    continue
                new_gap = abs(prop - y[j])
                if new_gap == 0.0:
                    ok = False
                    break
                delta += 2.0 * (np.log(new_gap) - np.log(abs(y[i] - y[j])))
            attempted += 1
            if ok and (delta >= 0.0 or np.random.random() < np.exp(delta)):
                y[i] = prop
                accepted += 1
        if thin > 0 and (sweep + 1) % thin == 0 and stored < out.shape[0]:
            out[stored] = y
            stored += 1
    return accepted, attempted, stored


@dataclass(frozen=True)
class CoulombChain:
    states: np.ndarray       # (samples, n) post burn-in coordinates
    acceptance: float
    sigma: float
    n: int

    def pooled_rescaled(self) -> np.ndarray:
        """All sampled coordinates divided by sqrt(n), pooled."""
        return (self.states / np.sqrt(self.n)).ravel()


def metropolis_sample(n: int, steps: int, sigma: float | None = None,
                      seed: int = 0, thin: int | None = None) -> CoulombChain:
    """Run the chain for `steps` single-coordinate updates; auto-tunes sigma
    when not given and drops the first 20% of sweeps as burn-in."""
    if n < 2:
        raise InvalidConfigError("need at least two particles")
    if steps < 100 * n:
        raise InvalidConfigError("chain too short to burn in")
    rng = np.random.default_rng(seed)
    y = np.sort(rng.normal(scale=np.sqrt(n), size=n))

    if sigma is None:
        sigma = 1.0
        for tune in range(12):
            acc, att, _ = _mcmc_kernel(y.copy(), sigma, 50, 0,
                                       int(rng.integers(2 ** 31)),
                                       np.empty((1, n)))
            rate = acc / att
            if 0.3 <= rate <= 0.5:
                break
            sigma *= 1.6 if rate > 0.4 else 1 / 1.6
        else:
            raise ConvergenceError("proposal width failed to tune")

    sweeps = steps // n
    burn = max(1, sweeps // 5)
    _mcmc_kernel(y, sigma, burn, 0, int(rng.integers(2 ** 31)), np.empty((1, n)))
    keep = sweeps - burn
    thin = thin or max(1, keep // 2000)
    out = np.empty((keep // thin, n))
    acc, att, stored = _mcmc_kernel(y, sigma, keep, thin,
                                    int(rng.integers(2 ** 31)), out)
    rate = acc / att
    if not 0.1 < rate < 0.9:
        raise ConvergenceError(f"acceptance rate {rate:.2f} outside (0.1, 0.9)")
    return CoulombChain(states=out[:stored].copy(), acceptance=float(rate),
                        sigma=float(sigma), n=n)
