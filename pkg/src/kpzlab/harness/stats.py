"""Empirical-distribution statistics used by the experiment harness."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from kpzlab.errors import InvalidConfigError

__all__ = ["Ecdf", "KsStatistic", "ks_distance", "ks_two_sample"]


@dataclass(frozen=True)
class Ecdf:
    """Right-continuous empirical CDF of a finite sample."""

    values: np.ndarray  # sorted ascending

    @staticmethod
    def from_sample(sample) -> "Ecdf":
        arr = np.sort(np.asarray(sample, dtype=np.float64))
        if arr.size == 0:
            raise InvalidConfigError("empty sample")
        if np.any(~np.isfinite(arr)):
            raise InvalidConfigError("sample contains non-finite values")
        return Ecdf(arr)

    @property
    def m(self) -> int:
        return int(self.values.size)

    def __call__(self, s) -> np.ndarray:
        """F̂(s) = (# sample points <= s) / m."""
        return np.searchsorted(self.values, s, side="right") / self.m


@dataclass(frozen=True)
class KsStatistic:
    """Exact Kolmogorov–Smirnov sup-distance and the sample size behind it."""

    d: float
    m: int

    def __post_init__(self):
        if not 0.0 <= self.d <= 1.0 + 1e-12:
            raise InvalidConfigError(f"KS distance outside [0, 1]: {self.d}")


def ks_distance(sample, cdf) -> KsStatistic:
    """Exact one-sample KS distance ``sup_s |F̂(s) - F(s)|``.

    The supremum of the difference between a step function and a monotone
    CDF is attained at sample points, where it equals
    ``max(|i/m - F(x_i)|, |(i-1)/m - F(x_i)|)`` over the order statistics.
    """
    ecdf = Ecdf.from_sample(sample)
    f = np.asarray(cdf(ecdf.values), dtype=np.float64)
    if np.any(np.diff(f) < -1e-12):
        raise InvalidConfigError("cdf is not monotone on the sample points")
    i = np.arange(1, ecdf.m + 1, dtype=np.float64)
    d_plus = np.max(i / ecdf.m - f)
    d_minus = np.max(f - (i - 1.0) / ecdf.m)
    return KsStatistic(d=float(max(d_plus, d_minus, 0.0)), m=ecdf.m)


def ks_two_sample(a, b) -> KsStatistic:
    """Exact two-sample KS distance ``sup_s |F̂_a(s) - F̂_b(s)|``.

    Evaluated on the pooled sample points, where the supremum is attained.
    Reports the smaller of the two sample sizes as ``m``.
    """
    fa, fb = Ecdf.from_sample(a), Ecdf.from_sample(b)
    pooled = np.concatenate([fa.values, fb.values])
    d = float(np.max(np.abs(fa(pooled) - fb(pooled))))
    return KsStatistic(d=d, m=min(fa.m, fb.m))
