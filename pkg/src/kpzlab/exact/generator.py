"""Generator matrices of the exclusion process on small state spaces.

States are N-particle configurations (strictly increasing tuples).  The
generator A has A[i, j] = rate of the jump from state i to state j and
diagonal entries minus the total exit rate, so the master equation reads
dP/dt = A^T P and conservation of probability is A^T applied to the
all-ones row being zero columnwise (column sums of A vanish).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy import sparse

from ..errors import InvalidConfigError
from ..asep.lattice import Rates

_MAX_STATES = 500_000


@dataclass(frozen=True)
class GeneratorMatrix:
    states: tuple          # tuple of strictly increasing position tuples
    index: dict            # position tuple -> state index
    matrix: sparse.csr_matrix
    rates: Rates

    @property
    def n_states(self) -> int:
        return len(self.states)

    def dense(self) -> np.ndarray:
        return self.matrix.toarray()


def _build(states, neighbors, rates: Rates) -> GeneratorMatrix:
    index = {s: k for k, s in enumerate(states)}
    rows, cols, vals = [], [], []
    for k, s in enumerate(states):
        exit_rate = 0.0
        for target, rate in neighbors(s):
            j = index.get(target)
            exit_rate += rate
            if j is None:  # pragma: no cover - neighbors stay in the space
                raise InvalidConfigError(f"target state {target} not enumerated")
            rows.append(k)
            cols.append(j)
            vals.append(rate)
        rows.append(k)
        cols.append(k)
        vals.append(-exit_rate)
    m = sparse.csr_matrix((vals, (rows, cols)),
                          shape=(len(states), len(states)))
    return GeneratorMatrix(states=tuple(states), index=index, matrix=m, rates=rates)


def ring_generator(N: int, L: int, rates: Rates) -> GeneratorMatrix:
    """Generator of N exclusion particles on the ring Z/L."""
    if not 1 <= N < L:
        raise InvalidConfigError(f"need 1 <= N < L, got N={N}, L={L}")
    if L > 24 or _n_choose_k(L, N) > _MAX_STATES:
        raise InvalidConfigError(f"state space C({L},{N}) too large")
    states = list(combinations(range(L), N))

    def neighbors(s):
        occ = set(s)
        for i, x in enumerate(s):
            left = (x - 1) % L
            right = (x + 1) % L
            if left not in occ:
                yield tuple(sorted(s[:i] + (left,) + s[i + 1:])), rates.p
            if right not in occ:
                yield tuple(sorted(s[:i] + (right,) + s[i + 1:])), rates.q

    return _build(states, neighbors, rates)


def window_generator(N: int, lo: int, hi: int, rates: Rates) -> GeneratorMatrix:
    """Generator of N exclusion particles on the sites lo .. hi-1 of Z.

    Jumps that would leave the window are suppressed, so this is the
    infinite-lattice dynamics exactly as long as no mass reaches the edges.
    """
    width = hi - lo
    if N < 1 or width <= N:
        raise InvalidConfigError(f"window [{lo},{hi}) too small for N={N}")
    if _n_choose_k(width, N) > _MAX_STATES:
        raise InvalidConfigError(f"state space C({width},{N}) too large")
    states = list(combinations(range(lo, hi), N))

    def neighbors(s):
        occ = set(s)
        for i, x in enumerate(s):
            if x - 1 >= lo and x - 1 not in occ:
                yield s[:i] + (x - 1,) + s[i + 1:], rates.p
            if x + 1 < hi and x + 1 not in occ:
                yield s[:i] + (x + 1,) + s[i + 1:], rates.q

    return _build(states, neighbors, rates)


def _n_choose_k(n: int, k: int) -> int:
    from math import comb
    return comb(n, k)
