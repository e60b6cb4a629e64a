"""Exact generating-function checks for the X_l polynomials.

Both sides are rational truncated series: the direct sum of
t^n d0(n) P_{l,n}(eta) at a rational point eta, and the closed form expanded
with series arithmetic.
"""
from __future__ import annotations

from fractions import Fraction

from ..classical import jacobi, jacobi_R, jacobi_genfun_series, laguerre, laguerre_genfun_series
from ..exactnum import TruncatedSeries, to_rational
from ..report import VerificationReport
from ..xcore import FAMILY_TABLES, HALF, ParamSet, xpoly_at

THREE_HALVES = Fraction(3, 2)


def direct_series(family: str, lam, ell: int, eta: Fraction, order: int) -> TruncatedSeries:
    t = FAMILY_TABLES[family]
    return TruncatedSeries([t.d0(n, lam) * xpoly_at(family, lam, ell, n)(eta)
                            for n in range(order + 1)], "t")


def closed_series(family: str, lam, ell: int, eta: Fraction, order: int,
                  as_printed: bool = False) -> TruncatedSeries:
    """Closed form of d0(t d/dt) G_l(t, eta; lambda).

    ``as_printed`` reproduces the hyperbolic formula with the second index
    of the classical generating function taken literally as h - l + 1/2.
    """
    g, h = lam
    ts = TruncatedSeries.variable("t", order)
    if family == "L1":
        a = g + ell - HALF
        coef = laguerre(ell, a)(-eta) + ts / (1 - ts) * laguerre(ell, a - 1)(-eta)
        return coef * laguerre_genfun_series(a - 1, eta, order)
    if family == "L2":
        a = g + ell + HALF
        coef = (g + HALF) * laguerre(ell, -a - 1)(eta) - ts * eta / (1 - ts) * laguerre(ell, -a)(eta)
        return coef * laguerre_genfun_series(a, eta, order)
    R = jacobi_R(eta, ts)
    if family == "J1":
        a, b = g + ell - THREE_HALVES, h + ell + HALF
        bracket = (1 / R + a / (1 + R - ts) + b / (1 + R + ts)) * ts / R * (1 + eta)
        coef = (h + HALF) * jacobi(ell, g + ell - HALF, -h - ell - THREE_HALVES)(eta) \
            + bracket * jacobi(ell, a, -h - ell - HALF)(eta)
        return coef * jacobi_genfun_series(a, b, eta, order)
    if family == "J2":
        a, b = g + ell + HALF, h + ell - THREE_HALVES
        xi_a = jacobi(ell, -g - ell - THREE_HALVES, h + ell - HALF)(eta)
        xi_b = jacobi(ell, -g - ell - HALF, b)(eta)
    else:
        a, b = g + ell + HALF, -h + ell - THREE_HALVES
        if as_printed:
            b = h - ell + HALF
        xi_a = jacobi(ell, -g - ell - THREE_HALVES, -h + ell - HALF)(eta)
        xi_b = jacobi(ell, -g - ell - HALF, -h + ell - THREE_HALVES)(eta)
    bracket = (1 / R + a / (1 + R - ts) + b / (1 + R + ts)) * ts / R * (1 - eta)
    coef = (g + HALF) * xi_a - bracket * xi_b
    return coef * jacobi_genfun_series(a, b, eta, order)


def genfun_x(params: ParamSet, order: int, eta, as_printed: bool = False) -> VerificationReport:
    eta = to_rational(eta)
    rep = VerificationReport(suite="genfun", family=params.family, params=params.label(),
                             ell=params.ell, n=order)
    direct = direct_series(params.family, params.lam, params.ell, eta, order)
    closed = closed_series(params.family, params.lam, params.ell, eta, order, as_printed)
    mismatch = direct.first_mismatch(closed)
    rep.check("series", mismatch is None, None if mismatch is None else
              {"index": mismatch, "direct": str(direct[mismatch[0]]), "closed": str(closed[mismatch[0]])})
    rep.extra.update(eta=str(eta), order=order)
    return rep


# ---------------------------------------------------------------------------
# double generating functions for the Laguerre families


def _bivariate(s_order: int, t_order: int):
    t_in = TruncatedSeries.variable("t", t_order)
    s = TruncatedSeries.variable("s", s_order, inner=t_in)
    t = TruncatedSeries.constant(t_in, "s", s_order)
    return s, t


def double_direct(family: str, g, eta: Fraction, s_order: int, t_order: int) -> TruncatedSeries:
    rows = [direct_series(family, (g, Fraction(0)), ell, eta, t_order) for ell in range(s_order + 1)]
    return TruncatedSeries(rows, "s")


def double_closed(family: str, g, eta: Fraction, s_order: int, t_order: int) -> TruncatedSeries:
    if family == "L2":
        s, t = _bivariate(s_order, t_order)
        one_t = 1 - t
        pref = (g + HALF) - t * (one_t + s) * eta / (one_t * one_t)
        return pref * (-(s + t) * eta / one_t).exp() * (one_t + s) ** (-(g + THREE_HALVES))
    if family != "L1":
        raise ValueError("double generating functions exist for L1 and L2 only")
    # the exponent carries (r - S)^2 / s with r = sqrt(1-t), S = sqrt(1-t-4s);
    # one extra order in s survives the division by s
    s1, t1 = _bivariate(s_order + 1, t_order)
    d = (1 - t1).sqrt() - (1 - t1 - 4 * s1).sqrt()
    expo_s = (d * d).shift_down() * (eta / 4)
    s, t = _bivariate(s_order, t_order)
    r = (1 - t).sqrt()
    S = (1 - t - 4 * s).sqrt()
    z = (r + S) * HALF
    expo = expo_s + (-t * eta / (1 - t))
    num = ((2 - t) * r + t * S) * HALF
    return num * expo.exp() * z ** (-(g - HALF)) / (S * (1 - t) ** ((g + THREE_HALVES) / 2))


def double_genfun_check(family: str, g, s_order: int, t_order: int, eta) -> VerificationReport:
    g, eta = to_rational(g), to_rational(eta)
    rep = VerificationReport(suite="genfun", family=family, params={"g": str(g), "h": None},
                             extra={"eta": str(eta), "s_order": s_order, "t_order": t_order,
                                    "kind": "double"})
    direct = double_direct(family, g, eta, s_order, t_order)
    closed = double_closed(family, g, eta, s_order, t_order)
    mismatch = direct.first_mismatch(closed)
    rep.check("double-series", mismatch is None, None if mismatch is None else {"index": mismatch})
    return rep


__all__ = ["genfun_x", "double_genfun_check", "direct_series", "closed_series",
           "double_direct", "double_closed"]
