"""Jacobi -> Laguerre limits: classical (re-exported) and for the X_l families."""
from __future__ import annotations

from fractions import Fraction

from ..classical import limit_JtoL_check
from ..exactnum import to_rational
from ..report import VerificationReport
from ..xcore import xpoly_at

LIMIT_PAIRS = {"J1": "L1", "J2": "L2"}


def xl_limit_check(family: str, g, ell: int, n: int, x, hs,
                   ratio_window=(Fraction(1, 20), Fraction(1, 5))) -> VerificationReport:
    """P_{l,n}^{J}(1 - 2x/h; g, h) -> P_{l,n}^{L}(x; g) as h -> infinity."""
    g, x = to_rational(g), to_rational(x)
    hs = [to_rational(h) for h in hs]
    target_family = LIMIT_PAIRS[family]
    rep = VerificationReport(suite="limit", family=family, params={"g": str(g), "x": str(x)},
                             ell=ell, n=n)
    target = xpoly_at(target_family, (g, Fraction(0)), ell, n)(x)
    errors = [abs(xpoly_at(family, (g, h), ell, n)(1 - 2 * x / h) - target) for h in hs]
    rep.extra["errors"] = [float(e) for e in errors]
    lo, hi = ratio_window
    for k in range(len(errors) - 1):
        if errors[k] == 0:
            rep.check(f"ratio{k}", errors[k + 1] == 0)
            continue
        r = errors[k + 1] / errors[k]
        rep.check(f"ratio{k}", lo <= r <= hi, float(r))
    return rep


__all__ = ["limit_JtoL_check", "xl_limit_check"]
