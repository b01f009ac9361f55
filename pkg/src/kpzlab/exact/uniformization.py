"""Uniformization: rigorous evaluation of e^{A^T t} pi0 for a CTMC.

With Lambda >= max exit rate, B = I + A^T / Lambda is substochastic-free
(columnwise stochastic), and

    e^{A^T t} pi0 = sum_k  e^{-Lambda t} (Lambda t)^k / k!  B^k pi0.

All terms are nonnegative, so truncating when the Poisson tail drops below
`tol` bounds the error in total variation by tol.  Used as the arbiter
oracle for the contour-integral transition probabilities.
"""

from __future__ import annotations

import numpy as np
from scipy import stats

from ..errors import ConvergenceError, InvalidConfigError
from .generator import GeneratorMatrix

_MAX_TERMS = 100_000


def master_evolve(gen: GeneratorMatrix, pi0: np.ndarray, t: float,
                  tol: float = 1e-12) -> np.ndarray:
    """Distribution at time t of the chain started from pi0."""
    pi0 = np.asarray(pi0, dtype=np.float64)
    if pi0.shape != (gen.n_states,):
        raise InvalidConfigError(
            f"pi0 has shape {pi0.shape}, generator has {gen.n_states} states")
    if np.any(pi0 < -1e-15) or abs(pi0.sum() - 1.0) > 1e-10:
        raise InvalidConfigError("pi0 must be a probability distribution")
    if t < 0:
        raise InvalidConfigError(f"t must be nonnegative, got {t}")
    if t == 0:
        return pi0.copy()

    at = gen.matrix.T.tocsr()
    lam = float(-gen.matrix.diagonal().min())
    if lam <= 0:
        return pi0.copy()

    # number of Poisson terms needed so the tail is below tol
    k_max = int(stats.poisson.isf(tol * 0.1, lam * t)) + 2
    if k_max > _MAX_TERMS:
        raise ConvergenceError(
            f"uniformization needs {k_max} terms (Lambda*t = {lam * t:.3g})")

    log_pois = stats.poisson.logpmf(np.arange(k_max + 1), lam * t)
    weights = np.exp(log_pois)
    out = weights[0] * pi0
    v = pi0
    for k in range(1, k_max + 1):
        v = v + at.dot(v) / lam          # v = B^k pi0
        out = out + weights[k] * v
    return out


def delta_distribution(gen: GeneratorMatrix, config) -> np.ndarray:
    """Point mass on one configuration in the generator's state enumeration."""
    config = tuple(int(x) for x in config)
    if config not in gen.index:
        raise InvalidConfigError(f"configuration {config} not in state space")
    pi = np.zeros(gen.n_states)
    pi[gen.index[config]] = 1.0
    return pi
