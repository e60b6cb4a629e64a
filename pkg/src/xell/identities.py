"""Exact checks of the polynomial identities behind the X_l families.

The forward/backward identities are assembled directly from Laguerre and
Jacobi polynomials with the indices written in terms of alpha (and beta),
independently of the family tables in ``xcore``.  Derivatives of classical
polynomials are replaced by their forward shift relations; the ``literal``
variant differentiates instead, giving a second route.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .classical import ClassicalParams, classical_suite, jacobi, laguerre
from .exactnum import ETA, Poly, RationalFunction
from .report import VerificationReport
from .xcore import (FAMILY_TABLES, HALF, ParamSet, base_P, lam_add, xi_at, xpoly_at,
                    xpoly_original_J2, DegenerateDenominator)

IDENTITIES = ("fidL1", "bidL1", "fidL2", "bidL2", "fidJ", "bidJ", "fid4", "bid4",
              "xiShift21", "xiShift22", "ell0identity", "appendixA", "appCLemma", "classicalIds")

_APPLIES = {
    "fidL1": {"L1"}, "bidL1": {"L1"}, "fidL2": {"L2"}, "bidL2": {"L2"},
    "fidJ": {"J1", "J2", "hDPT"}, "bidJ": {"J1", "J2", "hDPT"}, "appendixA": {"J2"},
}
_NEEDS_N1 = {"fidL1", "bidL1", "fidL2", "bidL2", "fidJ", "bidJ"}
_N_FREE = {"fid4", "bid4", "xiShift21", "xiShift22", "appCLemma"}


@dataclass(frozen=True)
class IdentityCase:
    identity: str
    params: ParamSet
    n: int = 0
    literal: bool = False


class _Blocks:
    """Classical building blocks with derivatives either eliminated via the
    forward shift relations or taken literally."""

    def __init__(self, literal: bool):
        self.literal = literal

    def L(self, m, a, neg=False) -> Poly:
        p = laguerre(m, a)
        return p.compose_affine(-1) if neg else p

    def dL(self, m, a, neg=False) -> Poly:
        if self.literal:
            return self.L(m, a, neg).derive()
        # d/dx L_m^(a)(x) = -L_{m-1}^(a+1)(x); the chain rule flips the sign at -x
        q = self.L(m - 1, a + 1, neg)
        return q if neg else -q

    def J(self, m, a, b) -> Poly:
        return jacobi(m, a, b)

    def dJ(self, m, a, b) -> Poly:
        if self.literal:
            return jacobi(m, a, b).derive()
        return jacobi(m - 1, a + 1, b + 1) * (Fraction(m) + a + b + 1) / 2


def _op1(a: Poly, b: Poly, p: Poly) -> Poly:
    """(a d/dx + b) p."""
    return a * p.derive() + b * p


X = ETA


def _fidL1(bl: _Blocks, alpha, ell, n):
    A = bl.L(ell, alpha, True) * bl.L(n, alpha - 1) - bl.L(ell, alpha - 1, True) * bl.dL(n, alpha - 1)
    B = bl.L(ell, alpha + 1, True) * bl.L(n - 1, alpha) - bl.L(ell, alpha, True) * bl.dL(n - 1, alpha)
    return A, B


def fidL1(bl, alpha, ell, n) -> Poly:
    A, B = _fidL1(bl, alpha, ell, n)
    return _op1(bl.L(ell, alpha, True), -bl.dL(ell, alpha, True), A) + bl.L(ell, alpha - 1, True) * B


def bidL1(bl, alpha, ell, n) -> Poly:
    A, B = _fidL1(bl, alpha, ell, n)
    xi0 = bl.L(ell, alpha - 1, True)
    op = _op1(xi0 * X, xi0 * Poly((alpha + 1, -1)) - X * bl.dL(ell, alpha - 1, True), B)
    return op - bl.L(ell, alpha, True) * A * n


def _fidL2(bl, alpha, ell, n):
    A = bl.L(ell, -alpha - 2) * bl.L(n, alpha + 1) * (alpha - ell + 1) \
        + X * bl.L(ell, -alpha - 1) * bl.dL(n, alpha + 1)
    B = bl.L(ell, -alpha - 3) * bl.L(n - 1, alpha + 2) * (alpha - ell + 2) \
        + X * bl.L(ell, -alpha - 2) * bl.dL(n - 1, alpha + 2)
    return A, B


def fidL2(bl, alpha, ell, n) -> Poly:
    A, B = _fidL2(bl, alpha, ell, n)
    return _op1(bl.L(ell, -alpha - 2), -bl.dL(ell, -alpha - 2), A) + bl.L(ell, -alpha - 1) * B


def bidL2(bl, alpha, ell, n) -> Poly:
    A, B = _fidL2(bl, alpha, ell, n)
    xi0 = bl.L(ell, -alpha - 1)
    op = _op1(xi0 * X, xi0 * Poly((alpha + 1, -1)) - X * bl.dL(ell, -alpha - 1), B)
    return op - bl.L(ell, -alpha - 2) * A * n


_ONE_MX = Poly((1, -1))
_ONE_MX2 = Poly((1, 0, -1))


def _fidJ(bl, alpha, beta, ell, n):
    A = bl.J(ell, -alpha - 2, beta) * bl.J(n, alpha + 1, beta - 1) * (alpha - ell + 1) \
        - _ONE_MX * bl.J(ell, -alpha - 1, beta - 1) * bl.dJ(n, alpha + 1, beta - 1)
    B = bl.J(ell, -alpha - 3, beta + 1) * bl.J(n - 1, alpha + 2, beta) * (alpha - ell + 2) \
        - _ONE_MX * bl.J(ell, -alpha - 2, beta) * bl.dJ(n - 1, alpha + 2, beta)
    return A, B


def fidJ(bl, alpha, beta, ell, n) -> Poly:
    A, B = _fidJ(bl, alpha, beta, ell, n)
    first = _op1(bl.J(ell, -alpha - 2, beta), -bl.dJ(ell, -alpha - 2, beta), A)
    return first - bl.J(ell, -alpha - 1, beta - 1) * B * ((n + alpha + beta + 1) / 2)


def bidJ(bl, alpha, beta, ell, n) -> Poly:
    A, B = _fidJ(bl, alpha, beta, ell, n)
    xi0 = bl.J(ell, -alpha - 1, beta - 1)
    c1 = Poly((beta - alpha, -(alpha + beta + 2)))
    op = _op1(xi0 * _ONE_MX2, xi0 * c1 - _ONE_MX2 * bl.dJ(ell, -alpha - 1, beta - 1), B)
    return op + bl.J(ell, -alpha - 2, beta) * A * (2 * n)


# ---------------------------------------------------------------------------
# the individual checks


def _section5(case: IdentityCase, rep: VerificationReport):
    p, n, ell = case.params, case.n, case.params.ell
    fam = p.family
    g, h = p.lam
    bl = _Blocks(case.literal)
    name = case.identity
    alpha = g + ell - HALF
    if fam in ("L1", "L2"):
        fn = {"fidL1": fidL1, "bidL1": bidL1, "fidL2": fidL2, "bidL2": bidL2}[name]
        res = fn(bl, alpha, ell, n)
        rep.check_zero(name, res)
        return
    fn = fidJ if name == "fidJ" else bidJ
    if fam == "J2":
        res = fn(bl, alpha, h + ell - HALF, ell, n)
    elif fam == "hDPT":
        res = fn(bl, alpha, -h + ell - HALF, ell, n)
    else:
        # J1 as the mirror image of J2: eta -> -eta and g <-> h
        a, b = h + ell - HALF, g + ell - HALF
        res = fn(bl, a, b, ell, n).compose_affine(-1)
        sign = -1 if ell % 2 else 1
        rep.check("mirror-xi", jacobi(ell, -a - 1, b - 1).compose_affine(-1) * sign
                  == xi_at("J1", p.lam, ell))
        lp = FAMILY_TABLES["J1"].lam_prime(p.lam, ell)
        sign_n = -1 if n % 2 else 1
        rep.check("mirror-base", jacobi(n, a + 1, b - 1).compose_affine(-1) * sign_n
                  == base_P("J1", lp, n))
    rep.check_zero(name, res)


def _tables(case: IdentityCase, rep: VerificationReport):
    p, ell = case.params, case.params.ell
    t = FAMILY_TABLES[p.family]
    lam = p.lam

    def xi_k(k):
        return xi_at(p.family, lam_add(lam, t.delta, k), ell)

    x0, x1, x2 = xi_k(0), xi_k(1), xi_k(2)
    d2 = t.d2
    name = case.identity
    if name == "xiShift21":
        res = x1 * t.d1(lam) - x0 * t.d1(lam_add(lam, t.delta, ell)) - d2 * x0.derive()
    elif name == "xiShift22":
        res = d2 * x0 * t.d3(lam_add(lam, t.delta, ell), ell) - d2 * x1 * t.d3(lam, ell) \
            - t.c2 * x1.derive()
    elif name == "fid4":
        res = x1 * x1 * t.d1(lam) - x0 * x2 * t.d1(lam_add(lam, t.delta)) \
            - d2.derive() * x0 * x1 + d2 * x0 * x1.derive() - d2 * x0.derive() * x1
        rep.extra["degree_bound"] = 2 * ell
    elif name == "bid4":
        lp = t.lam_prime(lam, ell)
        res = t.c1(lp) * x1 * x1 * t.d1(lam) \
            - t.c1(lam_add(lam, t.delta, ell)) * x0 * x2 * t.d1(lam_add(lam, t.delta)) \
            - t.c2 * (x0 * x2.derive() - x0.derive() * x2) * t.d1(lam_add(lam, t.delta)) \
            + d2 * x0 * x1 * (t.E(1, lp) / 4)
        rep.extra["degree_bound"] = 2 * ell + 1
    else:
        raise KeyError(name)
    rep.check_zero(name, res)


def log_weight_derivative(family: str, lam) -> RationalFunction:
    """W'/W for the base weight at lam, written independently of xcore."""
    g, h = lam
    if family in ("L1", "L2"):
        return RationalFunction(Poly((g - HALF, -1)), ETA)
    if family in ("J1", "J2"):
        a, b = g - HALF, h - HALF
        return RationalFunction(Poly((-a,)), _ONE_MX) + RationalFunction(Poly((b,)), Poly((1, 1)))
    a, b = g - HALF, -h - HALF
    return RationalFunction(Poly((a,)), Poly((-1, 1))) + RationalFunction(Poly((b,)), Poly((1, 1)))


def _app_c(case: IdentityCase, rep: VerificationReport):
    p, ell = case.params, case.params.ell
    t = FAMILY_TABLES[p.family]
    lam = p.lam
    x0 = xi_at(p.family, lam, ell)
    x1 = xi_at(p.family, lam_add(lam, t.delta), ell)
    lam_l = lam_add(lam, t.delta, ell)
    q = RationalFunction(x1 * t.d1(lam), x0)
    r = q * RationalFunction(t.d2)
    # integrating -r (pq)' W by parts gives +(W r)'/W
    lhs = q * q + (r.derive() + r * log_weight_derivative(p.family, lam_l))
    rhs = RationalFunction(t.d2 * t.d2 * (t.d1(lam) * t.d3(lam_l, ell)), t.c2)
    rep.check("appCLemma", lhs == rhs, lhs - rhs)


def _ell0(case: IdentityCase, rep: VerificationReport):
    p, n = case.params, case.n
    t = FAMILY_TABLES[p.family]
    lam = p.lam
    pt = base_P(p.family, lam_add(lam, t.delta_tilde), n)
    res = base_P(p.family, lam, n) * t.d0(n, lam) - pt * t.d1(lam) + t.d2 * pt.derive()
    rep.check_zero("ell0identity", res)


def _appendix_a(case: IdentityCase, rep: VerificationReport):
    try:
        orig = xpoly_original_J2(case.params, case.n).poly
    except DegenerateDenominator as exc:
        rep.skip(str(exc))
        return
    rep.check_zero("appendixA", orig - xpoly_at("J2", case.params.lam, case.params.ell, case.n))


def _classical(case: IdentityCase, rep: VerificationReport):
    p, n = case.params, case.n
    t = FAMILY_TABLES[p.family]
    lp = t.lam_prime(p.lam, p.ell)
    g, h = lp
    if t.kind == "L":
        cp = ClassicalParams("Laguerre", g - HALF, None, n)
    elif t.kind == "J":
        cp = ClassicalParams("Jacobi", g - HALF, h - HALF, n)
    else:
        cp = ClassicalParams("Jacobi", g - HALF, -h - HALF, n)
    sub = classical_suite(cp)
    for k, v in sub.checks.items():
        rep.check(k, v, sub.residuals.get(k))


def check_identity(case: IdentityCase) -> VerificationReport:
    p = case.params
    rep = VerificationReport(suite="identities", family=p.family, params=p.label(), ell=p.ell,
                             n=None if case.identity in _N_FREE else case.n,
                             detail=case.identity)
    name = case.identity
    if name not in IDENTITIES:
        raise KeyError(f"unknown identity {name!r}")
    if name in _APPLIES and p.family not in _APPLIES[name]:
        return rep.skip(f"{name} does not apply to {p.family}")
    if name in _NEEDS_N1 and case.n < 1:
        return rep.skip(f"{name} needs n >= 1 (P_(n-1) undefined)")
    if not p.in_paper_range:
        rep.extra["warning"] = p.warning
    if name in _NEEDS_N1:
        _section5(case, rep)
    elif name in ("fid4", "bid4", "xiShift21", "xiShift22"):
        _tables(case, rep)
    elif name == "appCLemma":
        _app_c(case, rep)
    elif name == "ell0identity":
        _ell0(case, rep)
    elif name == "appendixA":
        _appendix_a(case, rep)
    else:
        _classical(case, rep)
    return rep


def identity_cases(params_list, nmax: int, identities=IDENTITIES, literal: bool = False):
    for p in params_list:
        for name in identities:
            if name in _APPLIES and p.family not in _APPLIES[name]:
                continue
            if name in _N_FREE:
                yield IdentityCase(name, p, 0, literal)
                continue
            top = nmax
            if p.family == "hDPT":
                top = min(nmax, p.n_B - p.ell)
            for n in range(top + 1):
                yield IdentityCase(name, p, n, literal)


def run_identity_suite(params_list, nmax: int = 4, identities=IDENTITIES,
                       literal: bool = False) -> list:
    """One report per (identity, parameter point, n), sorted canonically."""
    reports = []
    for case in identity_cases(list(params_list), nmax, identities, literal):
        try:
            reports.append(check_identity(case))
        except Exception as exc:  # noqa: BLE001 -- aggregate, never abort
            rep = VerificationReport(suite="identities", family=case.params.family,
                                     params=case.params.label(), ell=case.params.ell,
                                     n=case.n, detail=case.identity)
            rep.check("error", False, f"{type(exc).__name__}: {exc}")
            reports.append(rep)
    return sorted(reports, key=lambda r: r.sort_key())
