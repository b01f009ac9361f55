"""Hastings-McLeod solution of Painleve II:  q'' = s q + 2 q^3,
q(s) ~ Ai(s) as s -> +infinity.

The solution is a separatrix: initial-value integration in either direction
is eventually contaminated by the exponentially growing neighbours (the
error amplification exp((2 sqrt 2 / 3) |s|^{3/2}) exceeds 1e12 by s = -10),
so the problem is solved as a two-point boundary value problem by
collocation instead.  Boundary data: q = Ai on the right, and on the left
the classical expansion

    q(s) = sqrt(-s/2) (1 + 1/8 s^{-3} - 73/128 s^{-6} + 10657/1024 s^{-9} + ...),

good to ~1e-8 at s = -10.  The tail integrals

    I0(s) = int_s^inf q^2 dx,    I1(s) = int_s^inf x q^2 dx

are accumulated by composite quadrature on a refined grid and seeded at the
right endpoint with the closed-form Airy tails
    int_s^inf Ai^2       = Ai'(s)^2 - s Ai(s)^2,
    int_s^inf x Ai^2 dx  = (s Ai'(s)^2 - s^2 Ai(s)^2 - Ai(s) Ai'(s)) / 3.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid, solve_bvp, solve_ivp

from ..errors import ConvergenceError, InvalidConfigError
from .airy import airy

_S_RIGHT = 8.0
_BLOWUP = 1e6


@dataclass(frozen=True)
class PainleveSolution:
    grid: np.ndarray   # ascending uniform grid covering [s_min, s_max]
    q: np.ndarray
    qp: np.ndarray
    i0: np.ndarray     # int_s^inf q^2
    i1: np.ndarray     # int_s^inf x q^2


def left_asymptotic(s: float) -> float:
    """Hastings-McLeod expansion for s << 0."""
    if s >= -5.0:
        raise InvalidConfigError("left asymptotics only valid for s < -5")
    return float(np.sqrt(-s / 2.0)
                 * (1.0 + s ** -3 / 8.0 - 73.0 / 128.0 * s ** -6
                    + 10657.0 / 1024.0 * s ** -9))


def _airy_tails(s: float):
    a = airy(s)
    tail0 = a.aip ** 2 - s * a.ai ** 2
    tail1 = (s * a.aip ** 2 - s ** 2 * a.ai ** 2 - a.ai * a.aip) / 3.0
    return a.ai, a.aip, tail0, tail1


def hastings_mcleod(s_min: float = -10.0, s_max: float = _S_RIGHT,
                    step: float = 0.01) -> PainleveSolution:
    if s_min >= s_max or s_max > _S_RIGHT + 1e-12 or s_min < -40.0:
        raise InvalidConfigError(
            f"grid must satisfy -40 <= s_min < s_max <= {_S_RIGHT}")
    if s_min > -6.0:
        raise InvalidConfigError("left endpoint must be <= -6 for the boundary data")
    ai_r, _, tail0_r, tail1_r = _airy_tails(s_max)
    q_left = left_asymptotic(s_min)

    def rhs(s, y):
        return np.vstack([y[1], s * y[0] + 2.0 * y[0] ** 3])

    def bc(ya, yb):
        return np.array([ya[0] - q_left, yb[0] - ai_r])

    mesh = np.linspace(s_min, s_max, 801)
    guess = np.empty((2, mesh.size))
    for k, s in enumerate(mesh):
        if s < -1.0:
            guess[0, k] = np.sqrt(-s / 2.0)
            guess[1, k] = -0.5 / np.sqrt(-2.0 * s)
        else:
            a = airy(min(s, 12.0))
            guess[0, k] = a.ai
            guess[1, k] = a.aip
    sol = solve_bvp(rhs, bc, mesh, guess, tol=1e-10, max_nodes=200_000)
    if not sol.success:
        raise ConvergenceError(f"Painleve II collocation failed: {sol.message}")

    n = int(round((s_max - s_min) / step))
    grid = s_min + step * np.arange(n + 1)
    # refined grid for the tail-integral quadrature
    refine = 4
    fine = s_min + (step / refine) * np.arange(refine * n + 1)
    qf = sol.sol(fine)[0]
    # cumulative integrals from the right endpoint inward
    i0_f = tail0_r + cumulative_trapezoid((qf ** 2)[::-1], dx=step / refine,
                                          initial=0.0)[::-1]
    i1_f = tail1_r + cumulative_trapezoid((fine * qf ** 2)[::-1],
                                          dx=step / refine, initial=0.0)[::-1]
    vals = sol.sol(grid)
    return PainleveSolution(grid=grid, q=vals[0], qp=vals[1],
                            i0=i0_f[::refine], i1=i1_f[::refine])


def separatrix_probe(perturb: float, s_stop: float = -10.0) -> float:
    """Backward initial-value integration with boundary data Ai(8) + perturb.

    Returns the location where |q| crosses 1e6, demonstrating that data off
    the separatrix blows up; raises if no blow-up occurs before s_stop.
    """
    ai_r, aip_r, _, _ = _airy_tails(_S_RIGHT)

    def rhs(s, y):
        return (y[1], s * y[0] + 2.0 * y[0] ** 3)

    def blow(s, y):
        return abs(y[0]) - _BLOWUP

    blow.terminal = True
    sol = solve_ivp(rhs, (_S_RIGHT, s_stop), (ai_r + perturb, aip_r),
                    method="DOP853", rtol=1e-11, atol=1e-13, events=blow)
    if sol.t_events[0].size == 0:
        raise ConvergenceError(
            f"no blow-up before s = {s_stop} for perturbation {perturb}")
    return float(sol.t_events[0][0])


def ode_residual(sol: PainleveSolution) -> float:
    """max |q'' - (s q + 2 q^3)| on the interior grid.

    q'' uses the fourth-order five-point stencil so the check measures the
    solution rather than the h^2 truncation of the plain central difference.
    """
    h = sol.grid[1] - sol.grid[0]
    q = sol.q
    qpp = (-q[:-4] + 16 * q[1:-3] - 30 * q[2:-2] + 16 * q[3:-1] - q[4:]) / (12 * h ** 2)
    target = sol.grid[2:-2] * q[2:-2] + 2.0 * q[2:-2] ** 3
    return float(np.abs(qpp - target).max())
