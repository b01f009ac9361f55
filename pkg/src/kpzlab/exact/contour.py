"""Nested contour-integral transition probabilities for the exclusion process.

For initial configuration y and target x (strictly increasing N-tuples on Z),

    P_y(x; t) = (2 pi i)^{-N} sum_{sigma in S_N}  oint ... oint  A_sigma(xi)
                prod_j xi_{sigma(j)}^{x_j - y_{sigma(j)} - 1} e^{eps(xi_j) t} d xi_j,

with eps(xi) = p/xi + q xi - 1 and the contours small circles around the
origin.  A_sigma is the product over inversions (i < j with
sigma(i) > sigma(j)) of

    -(p + q xi_{sigma(i)} xi_{sigma(j)} - xi_{sigma(i)})
     / (p + q xi_{sigma(i)} xi_{sigma(j)} - xi_{sigma(j)}).

Quadrature is the trapezoid rule on circles (spectrally accurate for
analytic periodic integrands).  Conditioning: the integrand magnitude scales
like r^{sum(x) - sum(y) - N}, so targets with sum(x) < sum(y) would lose up
to sum(y) - sum(x) digits to cancellation.  Those are routed through the
exact transpose identity

    P_y(x; t; p, q) = P_x(y; t; q, p),

which holds because swapping p and q transposes every off-diagonal rate and
the exit rates match (on Z both p- and q-exits are counted by particle
clusters).

Orientation: with the package-wide convention p = left rate, q = right rate,
the displayed formula produces the mirror-image dynamics (its "p" events
step +1).  A single free particle makes this explicit — the residue
calculation yields displacement Poisson(p t) - Poisson(q t).  We therefore
evaluate the formula at swapped arguments; the master-equation oracle
confirms the orientation at N = 1 and N = 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

import numpy as np
from scipy import stats

from ..errors import ConvergenceError, InvalidConfigError, PoleProximityError
from ..asep.lattice import Rates

_LETTERS = "abcdefg"


def _formula_rates(rates: Rates) -> Rates:
    """Arguments at which the contour formula reproduces the physical
    dynamics with left rate rates.p, right rate rates.q (see module docs)."""
    return Rates(p=rates.q, q=rates.p)


@dataclass(frozen=True)
class ContourSpec:
    """Circle |xi| = radius with `nodes` trapezoid points, centred at 0."""

    radius: float = 0.5
    nodes: int = 128

    def __post_init__(self):
        if not 0 < self.radius < 1:
            raise InvalidConfigError(f"radius must be in (0,1), got {self.radius}")
        if self.nodes < 32:
            raise InvalidConfigError(f"need at least 32 nodes, got {self.nodes}")

    def points(self) -> np.ndarray:
        theta = 2.0 * np.pi * np.arange(self.nodes) / self.nodes
        return self.radius * np.exp(1j * theta)


def choose_radius(rates: Rates, r0: float = 0.5, safety: float = 0.9,
                  max_halvings: int = 6) -> float:
    """Shrink the circle until the amplitude poles xi_b = p/(1 - q xi_a) stay
    outside: requires r (1 + q r) < safety * p.  For p = 0 the denominator
    only vanishes at the origin, which the contour must enclose anyway, so
    the default radius stands."""
    r = r0
    if rates.p == 0.0:
        return r
    for _ in range(max_halvings + 1):
        if r * (1.0 + rates.q * r) < safety * rates.p:
            return r
        r /= 2.0
    raise PoleProximityError(
        f"no contour radius keeps amplitude poles outside (p={rates.p})")


def amplitude(sigma, xi, rates: Rates) -> complex:
    """A_sigma(xi): inversion product of two-particle scattering factors."""
    xi = np.asarray(xi, dtype=np.complex128)
    n = len(sigma)
    val = 1.0 + 0.0j
    for i in range(n):
        for j in range(i + 1, n):
            if sigma[i] > sigma[j]:
                a, b = xi[sigma[i]], xi[sigma[j]]
                num = rates.p + rates.q * a * b - a
                den = rates.p + rates.q * a * b - b
                if abs(den) < 1e-10:
                    raise PoleProximityError(
                        f"amplitude denominator {den} too close to zero")
                val *= -num / den
    return complex(val)


def _pair_factor(nodes: np.ndarray, rates: Rates) -> np.ndarray:
    """F[m_a, m_b] = -(p + q xi_a xi_b - xi_a) / (p + q xi_a xi_b - xi_b)."""
    a = nodes[:, None]
    b = nodes[None, :]
    den = rates.p + rates.q * a * b - b
    if np.abs(den).min() < 1e-10:
        raise PoleProximityError("contour passes too close to an amplitude pole")
    return -(rates.p + rates.q * a * b - a) / den


def _batch_eval(ys, xs, t, rates: Rates, contour: ContourSpec) -> np.ndarray:
    """Raw quadrature for row-paired initial/target arrays of shape (S, N)."""
    n = ys.shape[1]
    nodes = contour.points()
    m = contour.nodes
    eps = rates.p / nodes + rates.q * nodes - 1.0
    weight = np.exp(eps * t) * nodes / m
    out = np.zeros(len(xs), dtype=np.complex128)
    for sigma in permutations(range(n)):
        inv = [0] * n
        for slot, k in enumerate(sigma):
            inv[k] = slot
        operands, script = [], []
        for i in range(n):
            for j in range(i + 1, n):
                if sigma[i] > sigma[j]:
                    operands.append(_pair_factor(nodes, rates))
                    script.append(_LETTERS[sigma[i]] + _LETTERS[sigma[j]])
        for k in range(n):
            expo = (xs[:, inv[k]] - ys[:, k] - 1).astype(np.float64)[:, None]
            operands.append(weight[None, :] * nodes[None, :] ** expo)
            script.append("s" + _LETTERS[k])
        out += np.einsum(",".join(script) + "->s", *operands, optimize=True)
    return out


def _validate_config(v, name):
    v = tuple(int(a) for a in v)
    if any(v[i] >= v[i + 1] for i in range(len(v) - 1)):
        raise InvalidConfigError(f"{name} must be strictly increasing, got {v}")
    return v


def transition_probabilities(y, xs, t: float, rates: Rates,
                             contour: ContourSpec | None = None,
                             check: bool = True) -> np.ndarray:
    """P_y(x; t) for every target x in xs (same initial condition y).

    Targets with sum(x) < sum(y) are evaluated through the transposed
    problem P_x(y; t; q, p) to avoid catastrophic cancellation.
    """
    y = _validate_config(y, "y")
    n = len(y)
    if not 1 <= n <= 3:
        raise InvalidConfigError(f"supported particle numbers are 1..3, got {n}")
    if t < 0:
        raise InvalidConfigError(f"t must be nonnegative, got {t}")
    xs = np.asarray([[int(a) for a in x] for x in xs], dtype=np.int64)
    if xs.ndim != 2 or xs.shape[1] != n:
        raise InvalidConfigError("targets must be N-tuples")
    for row in xs:
        _validate_config(row, "x")

    yrow = np.asarray(y, dtype=np.int64)[None, :]
    out = np.empty(len(xs), dtype=np.float64)
    d = xs.sum(axis=1) - yrow.sum()
    fwd = d >= 0
    if fwd.any():
        ys_b = np.broadcast_to(yrow, xs[fwd].shape)
        out[fwd] = _eval_checked(ys_b, xs[fwd], t, rates, contour, check)
    if (~fwd).any():
        swapped = Rates(p=rates.q, q=rates.p)
        c2 = None
        if contour is not None:
            c2 = ContourSpec(radius=choose_radius(_formula_rates(swapped)),
                             nodes=contour.nodes)
        xs_b = np.broadcast_to(yrow, xs[~fwd].shape)
        out[~fwd] = _eval_checked(xs[~fwd], xs_b, t, swapped, c2, check)
    return out


def _eval_checked(ys, xs, t, rates, contour, check) -> np.ndarray:
    rates = _formula_rates(rates)
    if contour is None:
        contour = ContourSpec(radius=choose_radius(rates))
    vals = _batch_eval(ys, xs, t, rates, contour)
    if check:
        fine = ContourSpec(radius=contour.radius, nodes=2 * contour.nodes)
        vals2 = _batch_eval(ys, xs, t, rates, fine)
        drift = np.abs(vals2 - vals).max()
        if drift > 1e-8:
            raise ConvergenceError(
                f"quadrature not converged: doubling nodes moved values by {drift:.3g}")
        vals = vals2
    if np.abs(vals.imag).max() > 1e-9:
        raise ConvergenceError(
            f"imaginary residue {np.abs(vals.imag).max():.3g} exceeds 1e-9")
    return vals.real


def transition_probability(y, x, t: float, rates: Rates,
                           contour: ContourSpec | None = None,
                           check: bool = True) -> float:
    """P_y(x; t) for a single target configuration."""
    return float(transition_probabilities(y, [x], t, rates, contour, check)[0])


def window_targets(y, t: float, tail: float = 1e-9):
    """All targets that can carry probability mass above roughly `tail`:
    each particle makes Poisson(t) jump attempts, so displacements beyond
    the Poisson tail quantile are negligible."""
    y = _validate_config(y, "y")
    reach = int(stats.poisson.isf(tail / 10.0, max(t, 1e-9))) + 2
    lo, hi = min(y) - reach, max(y) + reach + 1
    return list(combinations(range(lo, hi), len(y)))


def window_normalization(y, t: float, rates: Rates,
                         contour: ContourSpec | None = None,
                         nodes: int = 64) -> float:
    """Sum of P_y(x; t) over all reachable targets; should be 1 to ~1e-6."""
    xs = window_targets(y, t)
    if contour is None:
        contour = ContourSpec(radius=choose_radius(_formula_rates(rates)),
                              nodes=nodes)
    vals = transition_probabilities(y, xs, t, rates, contour, check=False)
    return float(vals.sum())
