"""Airy function Ai and its derivative, self-contained to ~1e-12 absolute.

Evaluation strategy on [-12, 12]:
  * |s| <= 5: Taylor marching of the ODE y'' = x y from 0 in unit steps.
    The local recurrence a_{k+2} = (x0 a_k + a_{k-1}) / ((k+2)(k+1)) has no
    cancellation blow-up, unlike a single Maclaurin series at large |s|.
    Marching starts from the exact values Ai(0) = 3^{-2/3}/Gamma(2/3),
    Ai'(0) = -3^{-1/3}/Gamma(1/3).
  * s > 5: the decaying asymptotic expansion in zeta = (2/3) s^{3/2},
    truncated at its smallest term (error ~ Ai(s) e^{-2 zeta}).  Forward
    marching would be contaminated by the growing solution there.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gamma

import numpy as np

from ..errors import InvalidConfigError

_AI0 = 3.0 ** (-2.0 / 3.0) / gamma(2.0 / 3.0)
_AIP0 = -(3.0 ** (-1.0 / 3.0)) / gamma(1.0 / 3.0)
_SWITCH = 5.0
_TERMS = 40


@dataclass(frozen=True)
class AiryEval:
    s: float
    ai: float
    aip: float


def _taylor_step(x0: float, y0: float, yp0: float, h: float):
    """Advance y'' = x y by h with a locally exact Taylor series."""
    a = np.zeros(_TERMS)
    a[0], a[1] = y0, yp0
    for k in range(_TERMS - 2):
        prev = a[k - 1] if k >= 1 else 0.0
        a[k + 2] = (x0 * a[k] + prev) / ((k + 2) * (k + 1))
    powers = h ** np.arange(_TERMS)
    y = float(np.dot(a, powers))
    yp = float(np.dot(a[1:] * np.arange(1, _TERMS), powers[:-1]))
    return y, yp


def _march(s: float):
    x, y, yp = 0.0, _AI0, _AIP0
    remaining = s
    while abs(remaining) > 1e-14:
        h = np.sign(remaining) * min(1.0, abs(remaining))
        y, yp = _taylor_step(x, y, yp, h)
        x += h
        remaining -= h
    return y, yp


def _asymptotic_coeffs(kmax: int):
    u = np.empty(kmax)
    v = np.empty(kmax)
    u[0] = v[0] = 1.0
    for k in range(1, kmax):
        u[k] = u[k - 1] * (6 * k - 5) * (6 * k - 1) / (72.0 * k)
        v[k] = u[k] * (6 * k + 1) / (1 - 6 * k)
    return u, v


_U, _V = _asymptotic_coeffs(40)


def _asymptotic(s: float):
    zeta = (2.0 / 3.0) * s ** 1.5
    terms_u = _U * (-1.0 / zeta) ** np.arange(len(_U))
    terms_v = _V * (-1.0 / zeta) ** np.arange(len(_V))
    # truncate each alternating series at its smallest term
    cut = int(np.argmin(np.abs(terms_u)))
    su = terms_u[:cut].sum()
    sv = terms_v[:cut].sum()
    pref = np.exp(-zeta) / (2.0 * np.sqrt(np.pi))
    ai = pref * s ** -0.25 * su
    aip = -pref * s ** 0.25 * sv
    return float(ai), float(aip)


def airy(s: float) -> AiryEval:
    s = float(s)
    if not -12.0 <= s <= 12.0:
        raise InvalidConfigError(f"airy evaluation limited to [-12, 12], got {s}")
    if s > _SWITCH:
        ai, aip = _asymptotic(s)
    else:
        ai, aip = _march(s)
    return AiryEval(s=s, ai=ai, aip=aip)
