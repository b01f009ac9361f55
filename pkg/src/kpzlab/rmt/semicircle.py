"""Wigner semicircle law and Stieltjes-transform machinery.

The semicircle density is (2 pi)^{-1} sqrt(4 - x^2) on [-2, 2]; its
Stieltjes transform s(z) = integral (x - z)^{-1} dmu(x) solves the fixed
point s = -1/(z + s), i.e. s^2 + z s + 1 = 0.  Of the two roots we take the
Herglotz one (Im s and Im z share a sign, s ~ -1/z at infinity), obtained
from the principal square root of 1 - 4/z^2.
"""

from __future__ import annotations

import numpy as np
from scipy import integrate

from ..errors import InvalidConfigError
from .gue import EmpiricalMeasure


def semicircle(x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    out = np.zeros_like(x)
    inside = np.abs(x) < 2.0
    out[inside] = np.sqrt(4.0 - x[inside] ** 2) / (2.0 * np.pi)
    return out if out.ndim else float(out)


def semicircle_cdf(x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    xc = np.clip(x, -2.0, 2.0)
    val = 0.5 + xc * np.sqrt(4.0 - xc ** 2) / (4.0 * np.pi) + np.arcsin(xc / 2.0) / np.pi
    return val if val.ndim else float(val)


def semicircle_moment(k: int) -> float:
    """Moment integral x^k d mu_sc; even orders are Catalan numbers."""
    val, _ = integrate.quad(lambda x: x ** k * semicircle(x), -2.0, 2.0,
                            epsabs=1e-12, epsrel=1e-12, limit=200)
    return val


def stieltjes(mu: EmpiricalMeasure, z: complex) -> complex:
    if z.imag == 0:
        raise InvalidConfigError("Stieltjes transform needs Im z != 0")
    return complex(np.mean(1.0 / (mu.atoms - z)))


def semicircle_stieltjes(z: complex) -> complex:
    z = complex(z)
    if z.imag == 0 and -2.0 <= z.real <= 2.0:
        raise InvalidConfigError("Stieltjes transform evaluated on the cut [-2,2]")
    # principal sqrt of 1 - 4/z^2 gives the branch with s ~ -1/z at infinity
    return complex(z * (np.sqrt(1.0 - 4.0 / z ** 2) - 1.0) / 2.0)


def invert_stieltjes(s_fn, x: float, b: float = 1e-4) -> float:
    """Density recovery p(x) = (s(x + ib) - s(x - ib)) / (2 pi i), small b."""
    if b <= 0:
        raise InvalidConfigError("b must be positive")
    val = (s_fn(complex(x, b)) - s_fn(complex(x, -b))) / (2j * np.pi)
    return float(val.real)


def stieltjes_fixed_point_residual(z: complex) -> float:
    s = semicircle_stieltjes(z)
    return abs(s * (z + s) + 1.0)
