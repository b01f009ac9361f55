"""KPZ rescalings of the exclusion-process height function.

Three views of the same interface:
  * the 1:2:3 scaling  h_eps(t, x) = eps^{1/2} h(eps^{-3/2} t, eps^{-1} x) - C_eps t,
  * the one-point edge statistic whose t -> infinity law is Tracy-Widom F2,
  * the weakly-asymmetric slope (discrete Burgers) field
    u_eps(T, X) = eps^{-1/2} (1 - 2 eta_{eps^{-2} T}(floor(eps^{-1} X))).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidConfigError
from .height import height
from .lattice import Rates
from .simulate import TrajectorySample, replay


@dataclass(frozen=True)
class BurgersScaling:
    """Weak-asymmetry scaling: epsilon with asymmetry p - q = lam * sqrt(eps)."""

    epsilon: float
    lam: float

    def __post_init__(self):
        if not 0.0 < self.epsilon <= 1.0:
            raise InvalidConfigError(f"epsilon must be in (0, 1], got {self.epsilon}")

    def check_rates(self, rates: Rates, tol: float = 1e-12) -> None:
        drift = rates.p - rates.q
        if abs(drift - self.lam * np.sqrt(self.epsilon)) > tol:
            raise InvalidConfigError(
                f"rates have p - q = {drift}, scaling requires "
                f"lam*sqrt(eps) = {self.lam * np.sqrt(self.epsilon)}")


def rescale_kpz(traj: TrajectorySample, epsilon: float, c_eps: float,
                t: float, x: float) -> float:
    """1:2:3-rescaled height eps^{1/2} h(eps^{-3/2} t, eps^{-1} x) - c_eps * t.

    The spatial argument is rounded to the nearest lattice site.
    """
    if epsilon <= 0:
        raise InvalidConfigError(f"epsilon must be positive, got {epsilon}")
    t_lattice = epsilon ** -1.5 * t
    x_lattice = int(round(epsilon ** -1.0 * x))
    hf = height(traj, t_lattice, x_lo=x_lattice, x_hi=x_lattice)
    return float(np.sqrt(epsilon) * hf.at(x_lattice) - c_eps * t)


def one_point_statistic(h0: int, t: float) -> float:
    """Edge statistic of the origin current N_t = h(s, 0)/2 at s = t/(q - p):

        (N_t - t/4) / (2^{-4/3} t^{1/3}).

    The ECDF of minus this statistic converges to F2 as t grows.
    """
    if t <= 0:
        raise InvalidConfigError(f"t must be positive, got {t}")
    return (0.5 * h0 - 0.25 * t) / (2.0 ** (-4.0 / 3.0) * t ** (1.0 / 3.0))


def one_point_rescaled(trajs, rates: Rates, t: float) -> np.ndarray:
    """One-point statistics for an ensemble of step-IC trajectories.

    Each trajectory must cover physical time t/(q - p).  Accepts either
    TrajectorySample objects or precomputed integer anchors h(s, 0).
    """
    drift = rates.q - rates.p
    if drift <= 0:
        raise InvalidConfigError("one-point statistic requires q > p")
    s = t / drift
    out = np.empty(len(trajs), dtype=np.float64)
    for j, tr in enumerate(trajs):
        if isinstance(tr, TrajectorySample):
            if tr.t_end < s - 1e-9:
                raise InvalidConfigError(
                    f"trajectory covers t={tr.t_end}, statistic needs {s}")
            _, h0 = replay(tr, s)
        else:
            h0 = int(tr)
        out[j] = one_point_statistic(h0, t)
    return out


def burgers_field(traj: TrajectorySample, scaling: BurgersScaling,
                  T: float, X: float) -> float:
    """Rescaled slope u_eps(T, X) = eps^{-1/2} (1 - 2 eta_{eps^{-2} T}(site))."""
    eps = scaling.epsilon
    t_lattice = eps ** -2.0 * T
    if t_lattice > traj.t_end + 1e-9:
        raise InvalidConfigError(
            f"trajectory covers t={traj.t_end}, Burgers field needs {t_lattice}")
    site = int(np.floor(eps ** -1.0 * X))
    positions, _ = replay(traj, min(t_lattice, traj.t_end))
    lat = traj.initial.lattice
    if hasattr(lat, "L"):
        occupied = (site % lat.L) in {p % lat.L for p in positions}
    else:
        if not lat.lo <= site < lat.hi:
            raise InvalidConfigError(f"site {site} outside window [{lat.lo}, {lat.hi})")
        occupied = site in set(positions)
    return float(eps ** -0.5 * (1 - 2 * int(occupied)))
