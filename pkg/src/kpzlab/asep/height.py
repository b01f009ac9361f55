"""Height function of the exclusion process.

h(t, x) is defined on integer x by the increment rule
    h(t, x+1) - h(t, x) = 1 - 2 * eta_t(x + 1/2),
anchored at h(0, 0) = 0 and moved by +/-2 whenever a particle crosses the
origin (tracked incrementally during simulation).  For the step initial
condition this gives the wedge h(0, x) = |x|.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidConfigError
from .lattice import InfiniteWindow, ParticleConfig, Ring
from .simulate import TrajectorySample, replay


@dataclass(frozen=True)
class HeightField:
    """Height values over a contiguous integer range [x_lo, x_hi]."""

    x_lo: int
    values: np.ndarray  # values[j] = h(t, x_lo + j)
    t: float

    @property
    def x(self) -> np.ndarray:
        return np.arange(self.x_lo, self.x_lo + len(self.values))

    def at(self, x: int) -> int:
        j = x - self.x_lo
        if not 0 <= j < len(self.values):
            raise InvalidConfigError(f"x={x} outside height field range")
        return int(self.values[j])


def height_from_state(positions, h0: int, lattice, t: float,
                      x_lo: int | None = None, x_hi: int | None = None) -> HeightField:
    """Integrate the increment rule over a state (positions, anchor h0)."""
    if isinstance(lattice, Ring):
        lo, hi = 0, lattice.L
        occ = np.zeros(lattice.L, dtype=np.int8)
        occ[[p % lattice.L for p in positions]] = 1
    else:
        lo, hi = lattice.lo, lattice.hi
        occ = np.zeros(hi - lo, dtype=np.int8)
        occ[[p - lo for p in positions]] = 1
    x_lo = lo if x_lo is None else x_lo
    x_hi = hi if x_hi is None else x_hi
    if not (lo <= x_lo <= x_hi <= hi):
        raise InvalidConfigError(
            f"height range [{x_lo}, {x_hi}] outside lattice [{lo}, {hi}]")
    inc = 1 - 2 * occ.astype(np.int64)
    # cum[j] = sum of increments over storage sites lo .. lo+j-1
    cum = np.concatenate([[0], np.cumsum(inc)])
    origin = 0 if isinstance(lattice, Ring) else -lo
    if isinstance(lattice, Ring) and not (0 <= origin < lattice.L):  # pragma: no cover
        raise InvalidConfigError("ring must contain site 0")
    xs = np.arange(x_lo, x_hi + 1)
    vals = h0 + (cum[xs - lo] - cum[origin])
    return HeightField(x_lo=int(x_lo), values=vals.astype(np.int64), t=float(t))


def height(traj: TrajectorySample, t: float,
           x_lo: int | None = None, x_hi: int | None = None) -> HeightField:
    """Height field at time t, reconstructed from a trajectory's event log."""
    positions, h0 = replay(traj, t)
    return height_from_state(positions, h0, traj.initial.lattice, t, x_lo, x_hi)
