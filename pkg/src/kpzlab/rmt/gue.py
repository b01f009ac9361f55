"""Gaussian Unitary Ensemble sampling, spectra, and trace moments.

Entry convention: off-diagonal Re and Im parts are N(0, 1/2) (so
E|M_ij|^2 = 1) and diagonal entries are real N(0, 1).  Under this
normalization the ESD of the eigenvalues divided by sqrt(n) converges to the
semicircle on [-2, 2], the largest eigenvalue sits near 2 sqrt(n), and the
Tracy-Widom statistic is (y_max - 2 sqrt(n)) n^{1/6}.

Trace moments E[Tr M^j] are available both as Monte Carlo estimates and as
an exact Wick-theorem oracle: every pairing of the j matrix factors in
Tr M^j = sum M_{i_1 i_2} ... M_{i_j i_1} forces index identifications
(E[M_ab M_cd] = delta_ad delta_bc), and each pairing contributes n^c with c
the number of free index classes.  In particular E[Tr M^2] = n^2 and
E[Tr M^4] = 2 n^3 + n.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ..errors import InvalidConfigError


@dataclass(frozen=True)
class GUEMatrix:
    n: int
    entries: np.ndarray

    def __post_init__(self):
        if self.entries.shape != (self.n, self.n):
            raise InvalidConfigError("entry matrix shape mismatch")


@dataclass(frozen=True)
class SpectralSample:
    n: int
    eigenvalues: np.ndarray  # ascending, matrix units (not divided by sqrt n)

    @property
    def largest(self) -> float:
        return float(self.eigenvalues[-1])


@dataclass(frozen=True)
class EmpiricalMeasure:
    """Atoms of weight 1/n at the rescaled points y_i / sqrt(n)."""

    atoms: np.ndarray

    def cdf(self, x) -> np.ndarray:
        pts = np.sort(self.atoms)
        return np.searchsorted(pts, np.atleast_1d(x), side="right") / len(pts)


def sample_gue(n: int, seed=None, rng: np.random.Generator | None = None) -> GUEMatrix:
    """One GUE draw: M = (G + G*) / 2 with iid standard complex Gaussian G."""
    if n < 1:
        raise InvalidConfigError(f"n must be >= 1, got {n}")
    if rng is None:
        rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    m = (g + g.conj().T) / 2.0
    return GUEMatrix(n=n, entries=m)


def eigenvalues(mat: GUEMatrix) -> SpectralSample:
    vals = np.linalg.eigvalsh(mat.entries)
    return SpectralSample(n=mat.n, eigenvalues=vals)


def esd(spec: SpectralSample) -> EmpiricalMeasure:
    return EmpiricalMeasure(atoms=spec.eigenvalues / np.sqrt(spec.n))


def edge_rescale(spec: SpectralSample) -> float:
    """Tracy-Widom statistic of the largest eigenvalue: (y_max - 2 sqrt(n)) n^{1/6}."""
    if spec.n < 2:
        raise InvalidConfigError("edge statistic needs n >= 2")
    n = spec.n
    return float((spec.largest - 2.0 * np.sqrt(n)) * n ** (1.0 / 6.0))


def edge_ensemble(n: int, samples: int, seed=None) -> np.ndarray:
    """Independent edge statistics from `samples` GUE draws."""
    rng = np.random.default_rng(seed)
    out = np.empty(samples)
    for k in range(samples):
        out[k] = edge_rescale(eigenvalues(sample_gue(n, rng=rng)))
    return out


def trace_moment(n: int, j: int, samples: int, seed=None):
    """Monte Carlo estimate of E[Tr M^j]; returns (estimate, standard error)."""
    if j < 0 or j > 8 or n > 64:
        raise InvalidConfigError(f"supported: 0 <= j <= 8, n <= 64, got j={j}, n={n}")
    if j == 0:
        return float(n), 0.0
    rng = np.random.default_rng(seed)
    vals = np.empty(samples)
    for k in range(samples):
        lam = np.linalg.eigvalsh(sample_gue(n, rng=rng).entries)
        vals[k] = np.sum(lam ** j)
    return float(vals.mean()), float(vals.std(ddof=1) / np.sqrt(samples))


def _pairings(slots):
    if not slots:
        yield []
        return
    a = slots[0]
    for k in range(1, len(slots)):
        b = slots[k]
        rest = slots[1:k] + slots[k + 1:]
        for tail in _pairings(rest):
            yield [(a, b)] + tail


def trace_moment_exact(n: int, j: int) -> int:
    """Exact E[Tr M^j] by summing n^{components} over Wick pairings."""
    if j < 0:
        raise InvalidConfigError("moment order must be nonnegative")
    if j == 0:
        return n
    if j % 2 == 1:
        return 0
    total = 0
    for pairing in _pairings(list(range(j))):
        parent = list(range(j))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        # pairing slot k with slot l identifies i_k = i_{l+1} and i_{k+1} = i_l
        for k, l in pairing:
            union(k, (l + 1) % j)
            union((k + 1) % j, l)
        comps = len({find(a) for a in range(j)})
        total += n ** comps
    return total


def genus_moment_polynomial(j: int) -> dict:
    """E[Tr M^{2j}] as a polynomial in n: {exponent: coefficient}.

    The exponent of each Wick pairing is j + 1 - 2g with g the genus of the
    associated gluing, so this is the genus expansion of the moment.
    """
    coeffs: dict = {}
    if j == 0:
        return {1: 1}
    m = 2 * j
    for pairing in _pairings(list(range(m))):
        parent = list(range(m))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for k, l in pairing:
            ra, rb = find(k), find((l + 1) % m)
            if ra != rb:
                parent[ra] = rb
            ra, rb = find((k + 1) % m), find(l)
            if ra != rb:
                parent[ra] = rb
        comps = len({find(a) for a in range(m)})
        coeffs[comps] = coeffs.get(comps, 0) + 1
    return coeffs
