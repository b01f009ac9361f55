"""Bethe equations for the exclusion process on a ring of length L:

    z_j^L = (-1)^{N-1} prod_{i=1}^N  (p + q z_i z_j - z_j) / (p + q z_j z_i - z_i).

Each solution tuple yields an eigenvalue E = sum_j (p/z_j + q z_j - 1) of the
ring generator together with an eigenvector in Bethe-ansatz form

    v(x_1 < ... < x_N) = sum_sigma A_sigma(z) prod_j z_{sigma(j)}^{x_j},

with the same inversion-product amplitude as the contour formula.

Solving: N = 1 is z^L = 1.  For N = 2 the equations imply (z_1 z_2)^L = 1
(the two right-hand sides multiply to one), so with z_1 z_2 = omega fixed to
an L-th root of unity the system collapses to one polynomial

    (p + q omega) z^L - omega z^{L-1} - z + (p + q omega) = 0,

whose roots are polished by Newton iteration on the full system.  For N = 3
we run multi-start Newton from perturbed root-of-unity triples; the solver
reports the fraction of the generator spectrum it recovers rather than
asserting completeness.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

import numpy as np

from ..errors import ConvergenceError, InvalidConfigError, PoleProximityError
from ..asep.lattice import Rates
from .generator import GeneratorMatrix, ring_generator

_RESIDUAL_TOL = 1e-10
_MIN_GAP = 1e-8


@dataclass(frozen=True)
class BetheRoots:
    roots: tuple          # complex roots z_1..z_N
    L: int
    rates: Rates
    residual: float

    @property
    def N(self) -> int:
        return len(self.roots)

    @property
    def eigenvalue(self) -> complex:
        p, q = self.rates.p, self.rates.q
        return complex(sum(p / z + q * z - 1.0 for z in self.roots))


def bethe_residual(z, L: int, rates: Rates) -> float:
    """max_j |z_j^L - RHS_j| of the Bethe equations."""
    z = np.asarray(z, dtype=np.complex128)
    n = len(z)
    p, q = rates.p, rates.q
    worst = 0.0
    for j in range(n):
        rhs = (-1.0) ** (n - 1)
        for i in range(n):
            if i == j:
                continue  # the self-factor is identically 1 (0/0 at z=1, p/q)
            den = p + q * z[j] * z[i] - z[i]
            if abs(den) < 1e-10:
                raise PoleProximityError("Bethe denominator too close to zero")
            rhs *= (p + q * z[i] * z[j] - z[j]) / den
        worst = max(worst, abs(z[j] ** L - rhs))
    return worst


def _system(z, L, p, q):
    """Polynomial form F_j = z_j^L prod_{i!=j} den_ij - (-1)^{N-1} prod_{i!=j} num_ij."""
    n = len(z)
    out = np.empty(n, dtype=np.complex128)
    for j in range(n):
        num = (-1.0) ** (n - 1)
        den = z[j] ** L
        for i in range(n):
            if i == j:
                continue
            num *= p + q * z[i] * z[j] - z[j]
            den *= p + q * z[j] * z[i] - z[i]
        out[j] = den - num
    return out


def _newton_polish(z0, L, rates: Rates, steps: int = 60):
    z = np.asarray(z0, dtype=np.complex128).copy()
    n = len(z)
    h = 1e-7
    for _ in range(steps):
        f = _system(z, L, rates.p, rates.q)
        if np.abs(f).max() < 1e-14:
            break
        jac = np.empty((n, n), dtype=np.complex128)
        for k in range(n):
            zp = z.copy()
            zp[k] += h
            jac[:, k] = (_system(zp, L, rates.p, rates.q) - f) / h
        try:
            step = np.linalg.solve(jac, f)
        except np.linalg.LinAlgError:
            return None
        z = z - step
        if not np.all(np.isfinite(z)):
            return None
    return z


def _log_rhs(z, L, rates, ref):
    """log RHS_j of the Bethe equations, branch-matched to reference values.

    Summing principal logs of the scattering factors and snapping to the
    nearest 2*pi*i shift of `ref` keeps the function single-valued along a
    homotopy path as long as consecutive values stay within pi of each other.
    """
    n = len(z)
    p, q = rates.p, rates.q
    out = np.empty(n, dtype=np.complex128)
    sign = np.log((-1.0 + 0j) ** (n - 1)) if (n - 1) % 2 else 0.0
    for j in range(n):
        acc = sign
        for i in range(n):
            if i == j:
                continue
            num = p + q * z[i] * z[j] - z[j]
            den = p + q * z[j] * z[i] - z[i]
            if min(abs(num), abs(den)) < 1e-12:
                return None
            acc += np.log(num) - np.log(den)
        acc += 2j * np.pi * np.round((ref[j] - acc).imag / (2.0 * np.pi))
        out[j] = acc
    return out


def _homotopy_solve(quantum_numbers, L, rates: Rates, steps: int = 50):
    """Continue the decoupled modes z_j = exp(2 pi i k_j / L) to a Bethe
    solution along the family  L log z_j = s * log RHS_j + 2 pi i k_j,
    s: 0 -> 1, with Newton in log z at every step."""
    n = len(quantum_numbers)
    ell = 2j * np.pi * np.asarray(quantum_numbers, dtype=np.float64) / L  # log z_j
    k_term = 2j * np.pi * np.asarray(quantum_numbers, dtype=np.float64)
    w_ref = np.zeros(n, dtype=np.complex128)
    h = 1e-7
    for s in np.linspace(0.0, 1.0, steps + 1)[1:]:
        def g(lv):
            w = _log_rhs(np.exp(lv), L, rates, w_ref)
            if w is None:
                return None
            return L * lv - s * w - k_term
        for _ in range(40):
            f = g(ell)
            if f is None:
                return None
            if np.abs(f).max() < 1e-12:
                break
            jac = np.empty((n, n), dtype=np.complex128)
            for c in range(n):
                lp = ell.copy()
                lp[c] += h
                fp = g(lp)
                if fp is None:
                    return None
                jac[:, c] = (fp - f) / h
            try:
                ell = ell - np.linalg.solve(jac, f)
            except np.linalg.LinAlgError:
                return None
        else:
            return None
        w = _log_rhs(np.exp(ell), L, rates, w_ref)
        if w is None:
            return None
        w_ref = w
    return np.exp(ell)


def _accept(z, L, rates, found):
    """Validate a candidate tuple and add it to `found` if new."""
    if z is None or np.any(np.abs(z) < 1e-8):
        return
    if len(z) > 1 and min(abs(a - b) for a, b in combinations(z, 2)) < _MIN_GAP:
        return
    try:
        res = bethe_residual(z, L, rates)
    except PoleProximityError:
        return
    if res >= _RESIDUAL_TOL:
        return
    key = tuple(sorted((round(w.real, 6), round(w.imag, 6)) for w in z))
    if key in found:
        return
    found[key] = BetheRoots(roots=tuple(complex(w) for w in z), L=L,
                            rates=rates, residual=res)


def bethe_solve(N: int, L: int, rates: Rates, seed_roots=None) -> list:
    """All Bethe root tuples the solver can certify (residual < 1e-10)."""
    if not 1 <= N <= 3 or not N < L <= 12:
        raise InvalidConfigError(f"supported: 1 <= N <= 3 < ... <= L <= 12, got N={N}, L={L}")
    found: dict = {}
    if seed_roots is not None:
        _accept(_newton_polish(seed_roots, L, rates), L, rates, found)

    if N == 1:
        for k in range(L):
            z = np.array([np.exp(2j * np.pi * k / L)])
            _accept(z, L, rates, found)
    elif N == 2:
        p, q = rates.p, rates.q
        for k in range(L):
            om = np.exp(2j * np.pi * k / L)
            coeffs = np.zeros(L + 1, dtype=np.complex128)
            coeffs[0] = p + q * om
            coeffs[1] = -om
            coeffs[-2] += -1.0
            coeffs[-1] = p + q * om
            for z1 in np.roots(coeffs):
                if abs(z1) < 1e-10:
                    continue
                z = _newton_polish([z1, om / z1], L, rates)
                _accept(z, L, rates, found)
    else:
        for trio in combinations(range(L), 3):
            z = _homotopy_solve(trio, L, rates)
            if z is not None:
                _accept(_newton_polish(z, L, rates), L, rates, found)

    sols = sorted(found.values(), key=lambda b: (b.eigenvalue.real, b.eigenvalue.imag))
    if not sols:
        raise ConvergenceError(f"no Bethe solutions certified for N={N}, L={L}")
    return sols


def bethe_eigenpair(roots: BetheRoots):
    """(E, eigenvector over ring configurations) for certified Bethe roots.

    The vector satisfies A v = E v for the ring generator with the same
    state enumeration as ring_generator(N, L, rates).
    """
    z = np.asarray(roots.roots, dtype=np.complex128)
    n, L = roots.N, roots.L
    p, q = roots.rates.p, roots.rates.q
    states = list(combinations(range(L), n))
    v = np.zeros(len(states), dtype=np.complex128)
    amps = []
    for sigma in permutations(range(n)):
        a = 1.0 + 0.0j
        for i in range(n):
            for j in range(i + 1, n):
                if sigma[i] > sigma[j]:
                    za, zb = z[sigma[i]], z[sigma[j]]
                    den = p + q * za * zb - zb
                    if abs(den) < 1e-10:
                        raise PoleProximityError("amplitude pole in Bethe eigenvector")
                    a *= -(p + q * za * zb - za) / den
        amps.append((sigma, a))
    for idx, s in enumerate(states):
        tot = 0.0 + 0.0j
        for sigma, a in amps:
            term = a
            for j in range(n):
                term *= z[sigma[j]] ** s[j]
            tot += term
        v[idx] = tot
    scale = np.abs(v).max()
    if scale < 1e-12:
        raise ConvergenceError("Bethe amplitudes cancel to a null vector")
    return roots.eigenvalue, v


def spectrum_coverage(sols, gen: GeneratorMatrix, tol: float = 1e-9):
    """Fraction of the generator spectrum matched by Bethe eigenvalues.

    Completeness of the ansatz at finite L is not asserted (singular root
    collisions are excluded by construction); this measures what was found.
    """
    evals = np.linalg.eigvals(gen.dense())
    used = np.zeros(len(evals), dtype=bool)
    for b in sols:
        dist = np.abs(evals - b.eigenvalue)
        dist[used] = np.inf
        k = int(np.argmin(dist))
        if dist[k] < tol:
            used[k] = True
    return float(used.sum()) / len(evals)


def eigenpair_residual(roots: BetheRoots, gen: GeneratorMatrix | None = None) -> float:
    """||A v - E v||_inf / ||v||_inf against the dense ring generator."""
    if gen is None:
        gen = ring_generator(roots.N, roots.L, roots.rates)
    E, v = bethe_eigenpair(roots)
    return float(np.abs(gen.matrix.dot(v) - E * v).max() / np.abs(v).max())
