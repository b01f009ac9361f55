"""Event-driven (Gillespie) simulation of the exclusion process.

One exponential clock of total rate N; each ring of the clock picks a uniform
particle and a direction (left with probability p, right with q), and the jump
is performed only if the target site is free.  This is equivalent in law to
independent per-particle clocks.

The hot loop is compiled with numba; the anchor value h(t, 0) of the height
function is tracked incrementally via origin crossings (+2 when a particle
jumps from site -1/2 to +1/2, -2 for the reverse).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from ..errors import InvalidConfigError, WindowEscapeError
from .lattice import InfiniteWindow, ParticleConfig, Rates, Ring

_OK = 0
_ESCAPE = 1
_OVERFLOW = 2


@njit(cache=True)
def _gillespie_kernel(pos, occ, p, t_end, n_sites, ring, origin_idx, seed,
                      ev_t, ev_i, ev_d, record):
    """Run the chain to t_end in place; returns (status, n_events, h0, t_stop).

    `pos` holds occupancy-array indices (window: site - lo; ring: site mod L).
    `origin_idx` is the occupancy index of storage site 0; a jump between
    indices origin_idx - 1 and origin_idx crosses the origin and moves the
    height anchor by -/+ 2.  Only successful jumps are recorded.
    """
    np.random.seed(seed)
    n = pos.shape[0]
    h0 = 0
    n_events = 0
    cap = ev_t.shape[0]
    if n == 0:
        return _OK, 0, 0, t_end
    t = 0.0
    inv_n = 1.0 / n
    while True:
        t += np.random.exponential(inv_n)
        if t > t_end:
            return _OK, n_events, h0, t_end
        i = int(np.random.random() * n)
        if i >= n:
            i = n - 1
        left = np.random.random() < p
        old = pos[i]
        new = old - 1 if left else old + 1
        if ring:
            if new < 0:
                new += n_sites
            elif new >= n_sites:
                new -= n_sites
        elif new < 0 or new >= n_sites:
            return _ESCAPE, n_events, h0, t
        if occ[new]:
            continue
        occ[old] = 0
        occ[new] = 1
        pos[i] = new
        if not ring:
            if old == origin_idx - 1 and new == origin_idx:
                h0 += 2
            elif old == origin_idx and new == origin_idx - 1:
                h0 -= 2
        if record:
            if n_events >= cap:
                return _OVERFLOW, n_events, h0, t
            ev_t[n_events] = t
            ev_i[n_events] = i
            ev_d[n_events] = -1 if left else 1
        n_events += 1


@dataclass(frozen=True)
class TrajectorySample:
    """One realization: initial config, the log of successful jumps, and the
    final state.  Replaying the log from the initial config reproduces the
    final config deterministically."""

    initial: ParticleConfig
    times: np.ndarray        # strictly increasing event times
    particles: np.ndarray    # particle index per event
    directions: np.ndarray   # -1 left / +1 right per event
    t_end: float
    seed: int
    final_positions: tuple
    h0_final: int            # height anchor h(t_end, 0) relative to h(0, 0)

    @property
    def n_events(self) -> int:
        return len(self.times)

    @property
    def final(self) -> ParticleConfig:
        return ParticleConfig(self.final_positions, self.initial.lattice)


def _kernel_setup(cfg: ParticleConfig):
    """Map a config onto occupancy-index arrays for the kernel."""
    if isinstance(cfg.lattice, Ring):
        n_sites = cfg.lattice.L
        ring = True
        origin_idx = 0
        pos = np.array([p % n_sites for p in cfg.positions], dtype=np.int64)
    else:
        lat = cfg.lattice
        n_sites = lat.hi - lat.lo
        ring = False
        origin_idx = -lat.lo
        pos = np.array([p - lat.lo for p in cfg.positions], dtype=np.int64)
    occ = np.zeros(n_sites, dtype=np.uint8)
    occ[pos] = 1
    return pos, occ, n_sites, ring, origin_idx


def _from_kernel_positions(pos, cfg: ParticleConfig):
    if isinstance(cfg.lattice, Ring):
        # restore the cyclic strictly-increasing ordering of eq-conf style
        return tuple(sorted(int(x) for x in pos))
    return tuple(sorted(int(x) + cfg.lattice.lo for x in pos))


def simulate(cfg: ParticleConfig, rates: Rates, t_end: float, seed: int,
             record_events: bool = True) -> TrajectorySample:
    """Exact realization of the exclusion dynamics up to t_end."""
    if not np.isfinite(t_end) or t_end < 0:
        raise InvalidConfigError(f"t_end must be finite and nonnegative, got {t_end}")
    n = cfg.n_particles
    lam = n * t_end
    cap = int(lam + 10.0 * np.sqrt(lam + 1.0) + 100.0) if record_events else 1
    for _ in range(8):
        pos, occ, n_sites, ring, origin_idx = _kernel_setup(cfg)
        ev_t = np.empty(cap, dtype=np.float64)
        ev_i = np.empty(cap, dtype=np.int32)
        ev_d = np.empty(cap, dtype=np.int8)
        status, n_events, h0, t_stop = _gillespie_kernel(
            pos, occ, rates.p, float(t_end), n_sites, ring, origin_idx,
            int(seed) & 0xFFFFFFFF, ev_t, ev_i, ev_d, record_events)
        if status == _OVERFLOW:
            cap *= 2
            continue
        if status == _ESCAPE:
            raise WindowEscapeError(
                f"particle reached the window edge at t={t_stop:.6g} (seed {seed})")
        k = n_events if record_events else 0
        return TrajectorySample(
            initial=cfg,
            times=ev_t[:k].copy(),
            particles=ev_i[:k].copy(),
            directions=ev_d[:k].copy(),
            t_end=float(t_end),
            seed=int(seed),
            final_positions=_from_kernel_positions(pos, cfg),
            h0_final=int(h0),
        )
    raise InvalidConfigError("event-log capacity kept overflowing")  # pragma: no cover


def replay(traj: TrajectorySample, t: float):
    """State at time t from the event log: (positions tuple, h0 anchor).

    Deterministic function of the log; used by height() and in replay tests.
    """
    if t < 0 or t > traj.t_end:
        raise InvalidConfigError(f"t={t} outside [0, {traj.t_end}]")
    pos, occ, n_sites, ring, origin_idx = _kernel_setup(traj.initial)
    h0 = 0
    n_up_to = int(np.searchsorted(traj.times, t, side="right"))
    for e in range(n_up_to):
        i = traj.particles[e]
        old = pos[i]
        new = old + traj.directions[e]
        if ring:
            new %= n_sites
        occ[old] = 0
        occ[new] = 1
        pos[i] = new
        if not ring:
            if old == origin_idx - 1 and new == origin_idx:
                h0 += 2
            elif old == origin_idx and new == origin_idx - 1:
                h0 -= 2
    return _from_kernel_positions(pos, traj.initial), h0


def simulate_ensemble(cfg: ParticleConfig, rates: Rates, t_end: float,
                      seeds, keep_positions: bool = False):
    """Independent trajectories, one per seed, without event logs.

    Returns (h0 anchors array, list of final position tuples or None).
    Intended for large Monte Carlo ensembles where storing logs is wasteful.
    """
    anchors = np.empty(len(seeds), dtype=np.int64)
    finals = [] if keep_positions else None
    for j, s in enumerate(seeds):
        pos, occ, n_sites, ring, origin_idx = _kernel_setup(cfg)
        dummy = np.empty(1, dtype=np.float64)
        status, _, h0, t_stop = _gillespie_kernel(
            pos, occ, rates.p, float(t_end), n_sites, ring, origin_idx,
            int(s) & 0xFFFFFFFF, dummy, np.empty(1, np.int32), np.empty(1, np.int8),
            False)
        if status == _ESCAPE:
            raise WindowEscapeError(
                f"particle reached the window edge at t={t_stop:.6g} (seed {s})")
        anchors[j] = h0
        if keep_positions:
            finals.append(_from_kernel_positions(pos, cfg))
    return anchors, finals


def spawn_seeds(root_seed: int, count: int) -> np.ndarray:
    """Counter-based independent substreams from a root seed."""
    ss = np.random.SeedSequence(root_seed)
    return ss.generate_state(count, dtype=np.uint32)
