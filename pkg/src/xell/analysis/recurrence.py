"""Three-term recurrence substitute for the X_l polynomials."""
from __future__ import annotations

from ..classical import ClassicalParams, DegenerateRecurrence, recurrence_coeffs
from ..exactnum import ETA
from ..report import VerificationReport
from ..xcore import FAMILY_TABLES, HALF, ParamSet, base_P, xi_map, xpoly_at


def classical_params_at(family: str, lam, n: int) -> ClassicalParams:
    g, h = lam
    kind = FAMILY_TABLES[family].kind
    if kind == "L":
        return ClassicalParams("Laguerre", g - HALF, None, n)
    if kind == "J":
        return ClassicalParams("Jacobi", g - HALF, h - HALF, n)
    return ClassicalParams("Jacobi", g - HALF, -h - HALF, n)


def recurrence_substitute_check(params: ParamSet, n: int) -> VerificationReport:
    """Xi[eta P_n(lambda')] = A d0(n+1) P_{l,n+1} + B d0(n) P_{l,n} + C d0(n-1) P_{l,n-1}."""
    rep = VerificationReport(suite="recurrence", family=params.family, params=params.label(),
                             ell=params.ell, n=n)
    t = FAMILY_TABLES[params.family]
    fam, lam, ell = params.family, params.lam, params.ell
    lp = t.lam_prime(lam, ell)
    try:
        rc = recurrence_coeffs(classical_params_at(fam, lp, n), n)
    except DegenerateRecurrence as exc:
        return rep.skip(f"classical recurrence degenerate at lambda': {exc}")
    lhs = xi_map(params, ETA * base_P(fam, lp, n))
    rhs = xpoly_at(fam, lam, ell, n + 1) * (rc.A * t.d0(n + 1, lam)) \
        + xpoly_at(fam, lam, ell, n) * (rc.B * t.d0(n, lam))
    if n >= 1:
        rhs = rhs + xpoly_at(fam, lam, ell, n - 1) * (rc.C * t.d0(n - 1, lam))
    rep.check_zero("substitute", lhs - rhs)
    # the classical recurrence itself at lambda'
    cl = ETA * base_P(fam, lp, n) - base_P(fam, lp, n + 1) * rc.A - base_P(fam, lp, n) * rc.B \
        - base_P(fam, lp, n - 1) * rc.C
    rep.check_zero("classical", cl)
    return rep


__all__ = ["recurrence_substitute_check", "classical_params_at"]
