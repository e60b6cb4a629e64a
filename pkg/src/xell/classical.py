"""Classical Laguerre and Jacobi polynomials over Q and the relations they obey.

Constructions allow arbitrary rational indices, since the deforming
polynomials of the exceptional families need negative ones.  Only the
orthogonality-related helpers insist on indices above -1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactnum import (ETA, ONE, Poly, TruncatedSeries, poch, poly_divexact,
                       to_rational)
from .report import VerificationReport


class DegenerateRecurrence(ArithmeticError):
    """A Jacobi recurrence denominator vanishes."""


class NonConvergence(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# construction


@lru_cache(maxsize=None)
def _laguerre(n: int, alpha: Fraction) -> Poly:
    nf = math.factorial(n)
    return Poly(poch(-n, k) * poch(alpha + k + 1, n - k) / (math.factorial(k) * nf)
                for k in range(n + 1))


def laguerre(n: int, alpha) -> Poly:
    """L_n^{(alpha)}(x); the zero polynomial for n < 0."""
    if n < 0:
        return Poly()
    return _laguerre(n, to_rational(alpha))


@lru_cache(maxsize=None)
def _jacobi(n: int, alpha: Fraction, beta: Fraction) -> Poly:
    # (alpha+1)_n / (alpha+1)_k is written as (alpha+k+1)_{n-k} so that
    # negative integer alpha needs no division.
    half = Poly((Fraction(1, 2), Fraction(-1, 2)))
    nf = math.factorial(n)
    out = Poly()
    power = ONE
    for k in range(n + 1):
        c = poch(-n, k) * poch(n + alpha + beta + 1, k) * poch(alpha + k + 1, n - k)
        out = out + power * (c / (nf * math.factorial(k)))
        power = power * half
    return out


def jacobi(n: int, alpha, beta) -> Poly:
    """P_n^{(alpha,beta)}(x); the zero polynomial for n < 0.

    The degree drops below n exactly when ``degenerate_degree`` is true.
    """
    if n < 0:
        return Poly()
    return _jacobi(n, to_rational(alpha), to_rational(beta))


def degenerate_degree(n: int, alpha, beta) -> bool:
    """True when the x^n coefficient of P_n^{(alpha,beta)} vanishes."""
    return n > 0 and poch(n + to_rational(alpha) + to_rational(beta) + 1, n) == 0


def _kind(family: str) -> str:
    if family in ("L", "L1", "L2"):
        return "L"
    if family in ("J", "J1", "J2"):
        return "J"
    if family == "hDPT":
        return "hDPT"
    raise ValueError(f"unknown family {family!r}")


def base_indices(family: str, g, h=None) -> tuple[Fraction, Fraction | None]:
    """Classical indices (alpha, beta) of the base polynomial P_n(eta; g, h)."""
    kind = _kind(family)
    g = to_rational(g)
    if kind == "L":
        return g - Fraction(1, 2), None
    h = to_rational(h)
    if kind == "J":
        return g - Fraction(1, 2), h - Fraction(1, 2)
    return g - Fraction(1, 2), -h - Fraction(1, 2)


def classical_P(n: int, family: str, g, h=None) -> Poly:
    """Base polynomial P_n(eta; lambda) of a family (L, J or hDPT type)."""
    a, b = base_indices(family, g, h)
    return laguerre(n, a) if b is None else jacobi(n, a, b)


@dataclass(frozen=True)
class ClassicalParams:
    kind: str
    alpha: Fraction
    beta: Fraction | None = None
    n: int = 0

    def __post_init__(self):
        if self.kind not in ("Laguerre", "Jacobi"):
            raise ValueError("kind must be 'Laguerre' or 'Jacobi'")
        object.__setattr__(self, "alpha", to_rational(self.alpha))
        if self.kind == "Jacobi":
            object.__setattr__(self, "beta", to_rational(self.beta))
        if self.n < 0:
            raise ValueError("n must be non-negative")

    def poly(self, n: int | None = None, dalpha=0, dbeta=0) -> Poly:
        n = self.n if n is None else n
        if self.kind == "Laguerre":
            return laguerre(n, self.alpha + dalpha)
        return jacobi(n, self.alpha + dalpha, self.beta + dbeta)

    def label(self) -> dict:
        out = {"alpha": str(self.alpha)}
        if self.beta is not None:
            out["beta"] = str(self.beta)
        return out

    def orthogonality_ok(self) -> bool:
        return self.alpha > -1 and (self.beta is None or self.beta > -1)


@dataclass(frozen=True)
class RecurrenceCoeffs:
    A: Fraction
    B: Fraction
    C: Fraction


def recurrence_coeffs(cp: ClassicalParams, n: int | None = None) -> RecurrenceCoeffs:
    """Coefficients of x P_n = A P_{n+1} + B P_n + C P_{n-1}."""
    n = cp.n if n is None else n
    a = cp.alpha
    if cp.kind == "Laguerre":
        return RecurrenceCoeffs(Fraction(-(n + 1)), 2 * n + a + 1, -(n + a))
    b = cp.beta
    s = 2 * n + a + b
    if n == 0:
        if a + b + 2 == 0:
            raise DegenerateRecurrence("alpha + beta + 2 = 0")
        return RecurrenceCoeffs(2 / (a + b + 2), (b - a) / (a + b + 2), Fraction(0))
    if s == 0 or s + 1 == 0 or s + 2 == 0:
        raise DegenerateRecurrence(f"vanishing denominator at n={n}, alpha={a}, beta={b}")
    return RecurrenceCoeffs(
        2 * (n + 1) * (n + a + b + 1) / ((s + 1) * (s + 2)),
        (b * b - a * a) / (s * (s + 2)),
        2 * (n + a) * (n + b) / (s * (s + 1)),
    )


# ---------------------------------------------------------------------------
# Rodrigues formulas, checked through an exponent ledger


def rodrigues_laguerre(n: int, alpha) -> Poly:
    """n-fold derivative of e^{-x} x^{n+alpha}, divided by e^{-x} x^alpha and n!.

    The running value is stored as e^{-x} x^alpha * P(x); one derivative gives
    e^{-x} x^{alpha-1} ((alpha - x) P + x P'), and the extra 1/x is removed by
    exact division (P keeps a factor x^{n-k} after k steps).
    """
    alpha = to_rational(alpha)
    x = ETA
    p = x ** n
    for _ in range(n):
        p = poly_divexact(p * (alpha - x) + x * p.derive(), x)
    return p / math.factorial(n)


def rodrigues_jacobi(n: int, alpha, beta) -> Poly:
    """Same ledger technique for (1-x)^alpha (1+x)^beta * P(x)."""
    alpha, beta = to_rational(alpha), to_rational(beta)
    one_m, one_p = Poly((1, -1)), Poly((1, 1))
    p = (one_m * one_p) ** n
    c2 = one_m * one_p
    for _ in range(n):
        p = poly_divexact(p * (one_m * beta - one_p * alpha) + c2 * p.derive(), c2)
    return p * Fraction((-1) ** n, 2 ** n * math.factorial(n))


# ---------------------------------------------------------------------------
# verification


def _report(suite: str, cp: ClassicalParams) -> VerificationReport:
    return VerificationReport(suite=suite, family=cp.kind, params=cp.label(), n=cp.n)


def classical_shift_check(cp: ClassicalParams) -> VerificationReport:
    """Forward and backward shift relations plus their composition."""
    rep = _report("classical-shift", cp)
    n, x = cp.n, ETA
    if n < 1:
        return rep.skip("shift relations need n >= 1")
    P = cp.poly()
    a = cp.alpha
    if cp.kind == "Laguerre":
        low = laguerre(n - 1, a + 1)
        rep.check_zero("forward", P.derive() + low)
        back = x * low.derive() + (a + 1 - x) * low
        rep.check_zero("backward", back - n * P)
        # forward then backward: -(x D + (a+1-x)) D L_n = n L_n
        rep.check_zero("compose", -(x * P.derive(2) + (a + 1 - x) * P.derive()) - n * P)
    else:
        b = cp.beta
        low = jacobi(n - 1, a + 1, b + 1)
        rep.check_zero("forward", P.derive() - low * (Fraction(1, 2) * (n + a + b + 1)))
        c2 = ONE - x * x
        back = c2 * low.derive() + (b - a - (a + b + 2) * x) * low
        rep.check_zero("backward", back + 2 * n * P)
        lhs = c2 * P.derive(2) + (b - a - (a + b + 2) * x) * P.derive()
        rep.check_zero("compose", lhs * 2 + P * (2 * n * (n + a + b + 1)))
    return rep


def classical_suite(cp: ClassicalParams) -> VerificationReport:
    """Differential equation, recurrence, Rodrigues, parity and identities."""
    rep = _report("classical", cp)
    n, x = cp.n, ETA
    a = cp.alpha
    P = cp.poly()
    if cp.kind == "Laguerre":
        rep.check_zero("diffeq", x * P.derive(2) + (a + 1 - x) * P.derive() + n * P)
        rep.check("degree", P.degree == n and P.lead == Fraction((-1) ** n, math.factorial(n)))
        rc = recurrence_coeffs(cp)
        rep.check_zero("recurrence", x * P - rc.A * cp.poly(n + 1) - rc.B * P - rc.C * cp.poly(n - 1))
        rep.check_zero("rodrigues", rodrigues_laguerre(n, a) - P)
        if n >= 1:
            # L_n^{(a)} - L_n^{(a-1)} = L_{n-1}^{(a)}
            rep.check_zero("Lid1", P - laguerre(n, a - 1) - laguerre(n - 1, a))
            # x L_{n-1}^{(a+1)} - a L_{n-1}^{(a)} = -n L_n^{(a-1)}
            rep.check_zero("Lid2", x * laguerre(n - 1, a + 1) - a * laguerre(n - 1, a)
                           + n * laguerre(n, a - 1))
        return rep

    b = cp.beta
    rep.check_zero("diffeq", (ONE - x * x) * P.derive(2) + (b - a - (a + b + 2) * x) * P.derive()
                   + P * (n * (n + a + b + 1)))
    if not degenerate_degree(n, a, b):
        rep.check("degree", P.degree == n)
    rep.check_zero("parity", P.compose_affine(-1) - jacobi(n, b, a) * (-1) ** n)
    try:
        rc = recurrence_coeffs(cp)
    except DegenerateRecurrence as exc:
        rep.extra["recurrence"] = f"skipped: {exc}"
    else:
        rep.check_zero("recurrence", x * P - rc.A * cp.poly(n + 1) - rc.B * P - rc.C * cp.poly(n - 1))
    rep.check_zero("rodrigues", rodrigues_jacobi(n, a, b) - P)
    if n >= 1:
        J = jacobi
        one_p, one_m = ONE + x, ONE - x
        rep.check_zero("Jid1", J(n, a, b - 1) * (2 * (n + b)) - J(n, a - 1, b) * (2 * b)
                       - one_p * J(n - 1, a, b + 1) * (n + a + b))
        rep.check_zero("Jid2", one_m * J(n - 1, a + 1, b) * (n + b) - one_p * J(n - 1, a, b + 1) * a
                       + J(n, a - 1, b) * (2 * n))
        rep.check_zero("Jid4", J(n - 1, a, b) * (2 * (a + n))
                       + one_m * (P - J(n, a + 1, b - 1)) * (a + b + 2 * n) - P * (2 * n))
        rep.check_zero("Jid1m", J(n, a - 1, b) * (2 * (n + a)) - J(n, a, b - 1) * (2 * a)
                       + one_m * J(n - 1, a + 1, b) * (n + a + b))
        rep.check_zero("Jid2m", one_p * J(n - 1, a, b + 1) * (n + a) - one_m * J(n - 1, a + 1, b) * b
                       - J(n, a, b - 1) * (2 * n))
        rep.check_zero("Jid4m", J(n - 1, a, b) * (-2 * (b + n))
                       + one_p * (P - J(n, a - 1, b + 1)) * (a + b + 2 * n) - P * (2 * n))
    return rep


# ---------------------------------------------------------------------------
# generating functions


@dataclass
class GenfunComparison:
    direct: TruncatedSeries
    closed: TruncatedSeries

    @property
    def match(self) -> bool:
        return self.direct == self.closed

    @property
    def first_mismatch(self):
        return self.direct.first_mismatch(self.closed)


def _t(order: int) -> TruncatedSeries:
    return TruncatedSeries.variable("t", order)


def laguerre_genfun_series(alpha, eta, order: int) -> TruncatedSeries:
    """e^{-t eta/(1-t)} / (1-t)^{alpha+1} expanded in t."""
    t = _t(order)
    one_m = 1 - t
    return (-(t * eta) / one_m).exp() * one_m ** (-(to_rational(alpha) + 1))


def jacobi_R(eta, t: TruncatedSeries) -> TruncatedSeries:
    return (1 - t * (2 * to_rational(eta)) + t * t).sqrt()


def jacobi_genfun_series(alpha, beta, eta, order: int) -> TruncatedSeries:
    """2^{a+b} / (R (1+R-t)^a (1+R+t)^b), with the powers of 2 absorbed so
    that every fractional power acts on a series with constant term 1."""
    t = _t(order)
    R = jacobi_R(eta, t)
    u = (1 + R - t) * Fraction(1, 2)
    v = (1 + R + t) * Fraction(1, 2)
    return (R * u ** to_rational(alpha) * v ** to_rational(beta)).inverse()


def genfun_classical(cp: ClassicalParams, order: int, eta, variant: str = "plain") -> GenfunComparison:
    """Direct sum against closed form.

    ``variant`` selects sum t^n L_n^{(a)} ("plain"), sum t^n L_n^{(a+n)}
    ("plus") or sum t^n L_n^{(a-n)} ("minus"); Jacobi supports only "plain".
    """
    eta = to_rational(eta)
    a = cp.alpha
    if cp.kind == "Jacobi":
        if variant != "plain":
            raise ValueError("Jacobi has only the plain generating function")
        direct = TruncatedSeries([jacobi(n, a, cp.beta)(eta) for n in range(order + 1)], "t")
        return GenfunComparison(direct, jacobi_genfun_series(a, cp.beta, eta, order))
    t = _t(order)
    if variant == "plain":
        direct = TruncatedSeries([laguerre(n, a)(eta) for n in range(order + 1)], "t")
        closed = laguerre_genfun_series(a, eta, order)
    elif variant == "plus":
        direct = TruncatedSeries([laguerre(n, a + n)(eta) for n in range(order + 1)], "t")
        S = (1 - 4 * t).sqrt()
        # 2^a (1+S)^{-a} = ((1+S)/2)^{-a};  (1-S)^2/(4t) computed one order up
        t1 = _t(order + 1)
        S1 = (1 - 4 * t1).sqrt()
        expo = ((1 - S1) * (1 - S1)).shift_down() * (-eta / 4)
        closed = expo.exp() * ((1 + S) * Fraction(1, 2)) ** (-a) / S
    elif variant == "minus":
        direct = TruncatedSeries([laguerre(n, a - n)(eta) for n in range(order + 1)], "t")
        closed = (1 + t) ** a * (t * (-eta)).exp()
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return GenfunComparison(direct, closed)


# ---------------------------------------------------------------------------
# Jacobi -> Laguerre limit


def limit_JtoL_check(alpha, n: int, x, betas, sign: int = 1,
                     ratio_window=(Fraction(1, 20), Fraction(1, 5))) -> VerificationReport:
    """P_n^{(alpha, sign*beta)}(1 - 2x/beta) -> L_n^{(alpha)}(sign*x), O(1/beta)."""
    alpha, x = to_rational(alpha), to_rational(x)
    betas = [to_rational(b) for b in betas]
    rep = VerificationReport(suite="limit", family="Laguerre",
                             params={"alpha": str(alpha), "x": str(x), "sign": sign}, n=n)
    target = laguerre(n, alpha)(sign * x)
    errors = []
    for b in betas:
        val = jacobi(n, alpha, sign * b)(1 - 2 * x / b)
        errors.append(abs(val - target))
    rep.extra["errors"] = [float(e) for e in errors]
    if all(e == 0 for e in errors):
        rep.check("exact", True)
        return rep
    lo, hi = ratio_window
    for k in range(len(errors) - 1):
        if errors[k] == 0:
            rep.check(f"ratio{k}", False, "error vanished before the last step")
            continue
        r = errors[k + 1] / errors[k]
        rep.check(f"ratio{k}", lo <= r <= hi, float(r))
    return rep
