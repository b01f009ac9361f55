"""Spectral-curve chart and residue calculus for the topological recursion.

The curve is ``y**2 + z*y + 1 = 0`` — the algebraic relation satisfied by the
Stieltjes transform of the Wigner semicircle law (in the normalization where
the support is ``[-2, 2]``).  It is rational, uniformized by the global
coordinate ``t`` via

    z(t) = -2 (1 + t**2) / (1 - t**2),      y(t) = (1 + t) / (1 - t).

The two sheets of the projection ``(z, y) -> z`` are exchanged by the
involution ``t -> -t`` (which maps ``y`` to its conjugate root ``1/y``), and
the ramification points of the projection are the zeros of ``dz/dt``, namely
``t = 0`` and ``t = oo``.  The point ``z = oo`` on the physical sheet (where
``y ~ -1/z`` decays) is ``t = -1``.

All computations here are exact, over the rationals, using sympy.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import sympy as sp

from kpzlab.errors import InvalidConfigError

__all__ = [
    "CurveChart",
    "CATALAN_CURVE",
    "residue_at",
    "residue_sum",
]

_T = sp.Symbol("t")
_U = sp.Symbol("_u_inf")


def residue_at(expr, var, point):
    """Residue of the 1-form ``expr * d(var)`` at ``var = point``.

    ``point`` may be ``sympy.oo``; the residue at infinity of ``f(t) dt`` is
    computed in the chart ``t = 1/u`` as ``Res_{u=0} [-f(1/u) / u**2]``.
    """
    expr = sp.cancel(expr)
    if point is sp.oo:
        return sp.residue(sp.cancel(-expr.subs(var, 1 / _U) / _U**2), _U, 0)
    return sp.residue(expr, var, point)


def residue_sum(expr, var):
    """Sum of all residues of the rational 1-form ``expr * d(var)``.

    For a rational function the residues over the Riemann sphere (all finite
    poles plus the point at infinity) sum to zero; this function exists so
    callers can assert that invariant on recursion integrands.
    """
    expr = sp.cancel(sp.together(expr))
    num, den = sp.fraction(expr)
    total = residue_at(expr, var, sp.oo)
    for root in sp.roots(sp.Poly(den, var)):
        total += sp.residue(expr, var, root)
    return sp.cancel(total)


@dataclass(frozen=True)
class CurveChart:
    """Rational uniformization of ``y**2 + z*y + 1 = 0``."""

    t: sp.Symbol = field(default=_T)

    @property
    def z(self):
        return -2 * (1 + self.t**2) / (1 - self.t**2)

    @property
    def y(self):
        return (1 + self.t) / (1 - self.t)

    @property
    def dz_dt(self):
        return sp.cancel(sp.diff(self.z, self.t))

    @property
    def branch_points(self):
        return (sp.Integer(0), sp.oo)

    def involution(self, expr_or_point):
        """Sheet-exchange involution ``t -> -t``."""
        if isinstance(expr_or_point, sp.Expr) and expr_or_point.free_symbols:
            return expr_or_point.subs(self.t, -self.t)
        return -expr_or_point

    @property
    def infinity_point(self):
        """The ``t``-coordinate of ``z = oo`` on the physical sheet."""
        return sp.Integer(-1)

    def z_at(self, point):
        return sp.cancel(self.z.subs(self.t, point))

    def y_at(self, point):
        return sp.cancel(self.y.subs(self.t, point))

    def verify(self):
        """Check the chart satisfies the curve and its ramification data.

        Raises :class:`InvalidConfigError` on any failure; returns ``True``
        otherwise.
        """
        t = self.t
        curve = sp.cancel(self.y**2 + self.z * self.y + 1)
        if curve != 0:
            raise InvalidConfigError(f"chart does not satisfy the curve: {curve}")
        conj = sp.cancel(self.y.subs(t, -t) - 1 / self.y)
        if conj != 0:
            raise InvalidConfigError("involution t -> -t does not exchange sheets")
        dz = self.dz_dt
        if sp.cancel(dz.subs(t, 0)) != 0:
            raise InvalidConfigError("dz/dt does not vanish at t = 0")
        if sp.limit(dz, t, sp.oo) != 0:
            raise InvalidConfigError("dz/dt does not vanish at t = oo")
        num, _den = sp.fraction(sp.cancel(dz))
        finite_zeros = sp.roots(sp.Poly(num, t))
        if set(finite_zeros) != {sp.Integer(0)}:
            raise InvalidConfigError(
                f"unexpected finite ramification points: {finite_zeros}"
            )
        return True


CATALAN_CURVE = CurveChart()
