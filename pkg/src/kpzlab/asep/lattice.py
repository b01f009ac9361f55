"""Lattice geometry, particle configurations, and occupation fields.

Site convention: particles live on the half-integer lattice Z + 1/2 and are
stored by the integer floor of their position, i.e. storage index k means the
physical site k + 1/2.  Height functions live on the integers.  On a ring of
length L the storage indices are 0..L-1 (display offset +1/2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from ..errors import InvalidConfigError


@dataclass(frozen=True)
class Rates:
    """Jump probabilities per clock ring: p to the left, q to the right."""

    p: float
    q: float

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise InvalidConfigError(f"negative rate: p={self.p}, q={self.q}")
        if abs(self.p + self.q - 1.0) > 1e-12:
            raise InvalidConfigError(f"p + q must equal 1, got {self.p + self.q}")

    @classmethod
    def from_p(cls, p: float) -> "Rates":
        return cls(p, 1.0 - p)


@dataclass(frozen=True)
class Ring:
    L: int

    def __post_init__(self):
        if self.L < 1:
            raise InvalidConfigError(f"ring length must be positive, got {self.L}")


@dataclass(frozen=True)
class InfiniteWindow:
    """Observed window (lo, hi) of the infinite lattice.

    Particles occupy storage sites k with lo <= k <= hi - 1 (physical
    positions strictly inside (lo, hi)); reaching either edge is an error.
    """

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo >= self.hi:
            raise InvalidConfigError(f"window requires lo < hi, got ({self.lo}, {self.hi})")

    @property
    def sites(self) -> range:
        return range(self.lo, self.hi)


LatticeKind = Union[Ring, InfiniteWindow]


@dataclass(frozen=True)
class ParticleConfig:
    """Strictly ordered particle positions (storage indices) on a lattice."""

    positions: tuple
    lattice: LatticeKind

    def __post_init__(self):
        pos = tuple(int(x) for x in self.positions)
        object.__setattr__(self, "positions", pos)
        if any(b <= a for a, b in zip(pos, pos[1:])):
            raise InvalidConfigError(f"positions must be strictly increasing: {pos}")
        if isinstance(self.lattice, Ring):
            L = self.lattice.L
            if len(pos) >= L:
                raise InvalidConfigError(f"need N < L on a ring, got N={len(pos)}, L={L}")
            if pos and (pos[0] < 0 or pos[-1] >= pos[0] + L):
                raise InvalidConfigError(f"ring ordering x_N < x_1 + L violated: {pos}")
        else:
            w = self.lattice
            if pos and (pos[0] < w.lo or pos[-1] > w.hi - 1):
                raise InvalidConfigError(
                    f"particles must lie strictly inside ({w.lo}, {w.hi}): {pos}"
                )

    @property
    def n_particles(self) -> int:
        return len(self.positions)

    def physical_positions(self) -> np.ndarray:
        """Positions on Z + 1/2 (ring indices taken mod L before offsetting)."""
        return np.asarray(self.positions, dtype=float) + 0.5


@dataclass(frozen=True)
class OccupationField:
    """Indicator field eta(x) = 1(x occupied) over a window of sites."""

    sites: tuple          # storage indices k (physical k + 1/2)
    values: tuple         # 0/1 per site

    def __post_init__(self):
        if len(self.sites) != len(self.values):
            raise InvalidConfigError("sites/values length mismatch")
        if any(v not in (0, 1) for v in self.values):
            raise InvalidConfigError("occupation values must be 0 or 1")

    @property
    def total(self) -> int:
        return int(sum(self.values))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.int8)


@dataclass(frozen=True)
class Step:
    """Every half-integer site left of the origin occupied (wedge IC)."""


@dataclass(frozen=True)
class Bernoulli:
    b: float
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.b <= 1.0:
            raise InvalidConfigError(f"Bernoulli density must be in [0,1], got {self.b}")


@dataclass(frozen=True)
class Explicit:
    positions: tuple

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple(int(x) for x in self.positions))


InitialSpec = Union[Step, Bernoulli, Explicit]


def build_initial(kind: LatticeKind, spec: InitialSpec) -> ParticleConfig:
    """Construct an initial configuration on the given lattice."""
    if isinstance(spec, Explicit):
        return ParticleConfig(spec.positions, kind)
    if isinstance(spec, Step):
        if isinstance(kind, Ring):
            raise InvalidConfigError("step initial condition needs an infinite window")
        if kind.lo >= 0:
            raise InvalidConfigError("window too small for step initial condition")
        return ParticleConfig(tuple(range(kind.lo, 0)), kind)
    if isinstance(spec, Bernoulli):
        rng = np.random.default_rng(spec.seed)
        if isinstance(kind, Ring):
            sites = np.arange(kind.L)
        else:
            sites = np.arange(kind.lo, kind.hi)
        occ = sites[rng.random(len(sites)) < spec.b]
        return ParticleConfig(tuple(int(s) for s in occ), kind)
    raise InvalidConfigError(f"unknown initial condition spec: {spec!r}")


def occupation(cfg: ParticleConfig, window: Sequence[int] | None = None) -> OccupationField:
    """Occupation field over a window of storage sites.

    `window` is an iterable of storage indices; defaults to the whole ring or
    the full observed window.
    """
    if window is None:
        if isinstance(cfg.lattice, Ring):
            window = range(cfg.lattice.L)
        else:
            window = cfg.lattice.sites
    sites = tuple(int(k) for k in window)
    if isinstance(cfg.lattice, Ring):
        L = cfg.lattice.L
        occupied = {p % L for p in cfg.positions}
        vals = tuple(1 if (k % L) in occupied else 0 for k in sites)
    else:
        lat = cfg.lattice
        for k in sites:
            if k < lat.lo or k > lat.hi - 1:
                raise InvalidConfigError(f"window site {k} outside lattice ({lat.lo},{lat.hi})")
        occupied = set(cfg.positions)
        vals = tuple(1 if k in occupied else 0 for k in sites)
    return OccupationField(sites, vals)
