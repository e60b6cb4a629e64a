"""Shift operators, the Fuchsian operator and the checks built on them.

Operators are linear differential operators sum_i c_i(eta) D^i whose
coefficients are exact rational functions, so logarithmic derivatives of
the deforming polynomial never have to be evaluated.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .exactnum import ETA, ONE, Poly, RationalFunction, poly_divexact, poly_gcd, resultant
from .report import VerificationReport
from .xcore import (FAMILY_TABLES, ParamSet, lam_add, xi_at, xi_map_at, xpoly_at,
                    XPolynomial)


class CompositionMismatch(ArithmeticError):
    """The explicit Fuchsian operator differs from B∘F."""


RF = RationalFunction


@dataclass(frozen=True)
class DiffOp:
    """sum_i coeffs[i] * D^i with RationalFunction coefficients."""

    coeffs: tuple

    @classmethod
    def of(cls, *coeffs) -> "DiffOp":
        return cls(tuple(RF.coerce(c) for c in coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def apply(self, p) -> RationalFunction:
        p = RF.coerce(p)
        out = RF.coerce(0)
        for c in self.coeffs:
            if not c.is_zero():
                out = out + c * p
            p = p.derive()
        return out

    def __add__(self, other) -> "DiffOp":
        if not isinstance(other, DiffOp):
            other = DiffOp.of(other)
        n = max(len(self.coeffs), len(other.coeffs))
        zero = RF.coerce(0)
        a = self.coeffs + (zero,) * (n - len(self.coeffs))
        b = other.coeffs + (zero,) * (n - len(other.coeffs))
        return DiffOp(tuple(x + y for x, y in zip(a, b)))

    def __matmul__(self, other: "DiffOp") -> "DiffOp":
        """Composition self∘other via D^i (b D^j) = sum_k C(i,k) b^{(k)} D^{i-k+j}."""
        out = [RF.coerce(0)] * (self.order + other.order + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                bk = b
                for k in range(i + 1):
                    if not bk.is_zero():
                        out[i - k + j] = out[i - k + j] + a * bk * comb(i, k)
                    bk = bk.derive()
        while len(out) > 1 and out[-1].is_zero():
            out.pop()
        return DiffOp(tuple(out))

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffOp):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        zero = RF.coerce(0)
        a = self.coeffs + (zero,) * (n - len(self.coeffs))
        b = other.coeffs + (zero,) * (n - len(other.coeffs))
        return all(x == y for x, y in zip(a, b))

    __hash__ = None


@dataclass(frozen=True)
class ShiftOperatorResult:
    value: RationalFunction

    @property
    def as_poly(self) -> Poly | None:
        return self.value.as_poly()


def _xi(params: ParamSet, shift: int = 0) -> Poly:
    t = FAMILY_TABLES[params.family]
    return xi_at(params.family, lam_add(params.lam, t.delta, shift), params.ell)


def forward_op(params: ParamSet) -> DiffOp:
    """F = cF (xi+/xi) (D - (log xi+)')."""
    t = FAMILY_TABLES[params.family]
    x0, x1 = _xi(params), _xi(params, 1)
    return DiffOp.of(RF(-x1.derive() * t.cF, x0), RF(x1 * t.cF, x0))


def backward_op(params: ParamSet) -> DiffOp:
    """B = -4/cF c2 (xi/xi+) (D + c1(lambda + l delta)/c2 - (log xi)')."""
    t = FAMILY_TABLES[params.family]
    x0, x1 = _xi(params), _xi(params, 1)
    k = Fraction(-4) / t.cF
    c1 = t.c1(lam_add(params.lam, t.delta, params.ell))
    return DiffOp.of(RF((c1 * x0 - t.c2 * x0.derive()) * k, x1), RF(t.c2 * x0 * k, x1))


def htilde_op(params: ParamSet) -> DiffOp:
    """Explicit second-order form of the Fuchsian operator."""
    t = FAMILY_TABLES[params.family]
    lam, ell = params.lam, params.ell
    x0, x1 = _xi(params), _xi(params, 1)
    c1 = t.c1(lam_add(lam, t.delta, ell))
    first = RF(c1) - RF(t.c2 * x0.derive() * 2, x0)
    zeroth = RF(t.c2 * x1.derive() * (2 * t.d1(lam)), t.d2 * x0) \
        + t.E_tilde(lam_add(lam, t.delta), ell) / 4
    return DiffOp.of(zeroth * -4, first * -4, RF(t.c2 * -4))


def htilde0_op(family: str, lam) -> DiffOp:
    t = FAMILY_TABLES[family]
    return DiffOp.of(0, RF(t.c1(lam) * -4), RF(t.c2 * -4))


def forward_apply(params: ParamSet, p: Poly) -> ShiftOperatorResult:
    return ShiftOperatorResult(forward_op(params).apply(p))


def backward_apply(params: ParamSet, q: Poly) -> ShiftOperatorResult:
    return ShiftOperatorResult(backward_op(params).apply(q))


def htilde_apply(params: ParamSet, p: Poly) -> ShiftOperatorResult:
    """Explicit operator and B∘F must agree; both routes are computed."""
    direct = htilde_op(params).apply(p)
    composed = backward_op(params).apply(forward_op(params).apply(p))
    if direct != composed:
        raise CompositionMismatch(f"explicit and factorised operators differ on {p} for {params}")
    return ShiftOperatorResult(direct)


def _report(suite: str, params: ParamSet, n=None) -> VerificationReport:
    return VerificationReport(suite=suite, family=params.family, params=params.label(),
                              ell=params.ell, n=n)


def _P(params: ParamSet, n: int, shift: int = 0) -> Poly:
    t = FAMILY_TABLES[params.family]
    return xpoly_at(params.family, lam_add(params.lam, t.delta, shift), params.ell, n)


# ---------------------------------------------------------------------------
# differential equations


def family_equation_residual(params: ParamSet, P: Poly, n: int) -> Poly:
    """The family's explicit equation for P_{l,n}, multiplied through by xi."""
    g, h = params.lam
    ell = params.ell
    x0, x1 = _xi(params), _xi(params, 1)
    dx0, dx1 = x0.derive(), x1.derive()
    P1, P2 = P.derive(), P.derive(2)
    eta = ETA
    fam = params.family
    if fam in ("L1", "L2"):
        bracket = x0 * (eta * P2 + (g + ell + Fraction(1, 2) - eta) * P1) - eta * dx0 * P1 * 2
        if fam == "L1":
            return bracket + x0 * P * (n - ell) + eta * dx1 * P * 2
        return bracket + x0 * P * (n + ell) - dx1 * P * (2 * (g + Fraction(1, 2)))
    one_m2 = ONE - eta * eta
    if fam in ("J1", "J2"):
        bracket = x0 * (one_m2 * P2 + (h - g - (g + h + 2 * ell + 1) * eta) * P1) \
            - one_m2 * dx0 * P1 * 2
        if fam == "J1":
            const = ell * (ell + g - h - 1) + n * (n + g + h + 2 * ell)
            return bracket + x0 * P * const - (ONE - eta) * dx1 * P * (2 * (h + Fraction(1, 2)))
        const = ell * (ell + h - g - 1) + n * (n + g + h + 2 * ell)
        return bracket + x0 * P * const + (ONE + eta) * dx1 * P * (2 * (g + Fraction(1, 2)))
    # hyperbolic family: same construction with c1, c2 and eigenvalues of that table
    c2 = eta * eta - ONE
    const = ell * (g + h + 1 - ell) + n * (h - g - 2 * ell - n)
    return x0 * c2 * P2 + ((g + h + (g - h + 2 * ell + 1) * eta) * x0 - c2 * dx0 * 2) * P1 \
        + (x0 * const - (ONE + eta) * dx1 * (2 * (g + Fraction(1, 2)))) * P


def eigen_check(params: ParamSet, n: int) -> VerificationReport:
    rep = _report("diffeq", params, n)
    t = FAMILY_TABLES[params.family]
    P = _P(params, n)
    rep.check_zero("family-equation", family_equation_residual(params, P, n))
    E = t.E(n, lam_add(params.lam, t.delta, params.ell))
    val = htilde_apply(params, P).value
    rep.check("eigenvalue", val == RF(P * E), val - RF(P * E))
    if n == 0:
        rep.check("ground-energy", E == 0 and val.is_zero())
    x1 = _xi(params, 1)
    rep.check_zero("xi-diffeq", t.c2 * x1.derive(2) + t.c1_tilde(lam_add(params.lam, t.delta), params.ell)
                   * x1.derive() + x1 * (t.E_tilde(lam_add(params.lam, t.delta), params.ell) / 4))
    return rep


# ---------------------------------------------------------------------------
# shape invariance and shift relations


def shape_invariance_check(params: ParamSet, degree_bound: int = 4) -> VerificationReport:
    """F(l)B(l) = B(l+d)F(l+d) + E1(l + l d), as operators and on Xi_{l,lam+d}[eta^k]."""
    rep = _report("shapeinv", params)
    t = FAMILY_TABLES[params.family]
    up = params.shifted(1)
    E1 = t.E(1, lam_add(params.lam, t.delta, params.ell))
    lhs = forward_op(params) @ backward_op(params)
    rhs = (backward_op(up) @ forward_op(up)) + DiffOp.of(E1)
    rep.check("coefficients", lhs == rhs)
    # both sides applied to the natural common domain
    for k in range(degree_bound + 1):
        v = xi_map_at(params.family, up.lam, params.ell, ETA ** k)
        a, b = lhs.apply(v), rhs.apply(v)
        rep.check(f"action{k}", a == b, a - b)
    # intertwining F B F = Htilde1 F on the same vectors
    Hf = htilde_op(up) + DiffOp.of(E1)
    F = forward_op(params)
    Bop = backward_op(params)
    for k in range(degree_bound + 1):
        v = xi_map_at(params.family, params.lam, params.ell, ETA ** k)
        Fv = F.apply(v)
        a = F.apply(Bop.apply(Fv))
        b = Hf.apply(Fv)
        rep.check(f"intertwine{k}", a == b, a - b)
    rep.extra["E1"] = str(E1)
    return rep


def forward_backward_shift_check(params: ParamSet, n: int) -> VerificationReport:
    rep = _report("shift", params, n)
    t = FAMILY_TABLES[params.family]
    lam_l = lam_add(params.lam, t.delta, params.ell)
    P = _P(params, n)
    Pdown = _P(params, n - 1, 1)
    x0, x1 = _xi(params), _xi(params, 1)
    # forward, multiplied by xi
    fwd = (x1 * P.derive() - x1.derive() * P) * t.cF - x0 * Pdown * t.f(n, lam_l)
    rep.check_zero("forward", fwd)
    res = forward_apply(params, P)
    rep.check("forward-divisible", res.as_poly is not None)
    if n >= 1:
        bwd = (x0 * (t.c2 * Pdown.derive() + t.c1(lam_l) * Pdown) - t.c2 * x0.derive() * Pdown) \
            + x1 * P * (t.cF * t.b(n) / 4)
        rep.check_zero("backward", bwd)
        back = backward_apply(params, Pdown)
        rep.check("backward-divisible", back.as_poly is not None)
    else:
        rep.check("annihilated", res.value.is_zero())
    return rep


def rodrigues(params: ParamSet, n: int) -> XPolynomial:
    """P_{l,n} from xi_l(lambda + (n+1) delta) by n backward steps."""
    t = FAMILY_TABLES[params.family]
    p = _xi(params, n + 1)
    for k in range(n - 1, -1, -1):
        step = params.shifted(k)
        q = backward_apply(step, p).as_poly
        if q is None:
            v = backward_op(step).apply(p)
            poly_divexact(v.num, v.den)  # raises NotDivisible with the remainder
        b = t.b(n - k)
        p = q / b
    return XPolynomial(params, n, p, "rodrigues")


def rodrigues_check(params: ParamSet, n: int) -> VerificationReport:
    rep = _report("rodrigues", params, n)
    r = rodrigues(params, n).poly
    rep.check_zero("equals-closed-form", r - _P(params, n))
    return rep


# ---------------------------------------------------------------------------
# invariant subspaces


@dataclass
class InvariantBasis:
    params: ParamSet
    n: int
    seeds: list
    vectors: list


def seed_polys(params: ParamSet, n: int, seed: str = "monomial") -> list:
    if seed == "monomial":
        base = ETA
    elif seed == "shifted":
        base = {"L1": ETA, "L2": ETA, "J1": ONE + ETA, "J2": ONE - ETA, "hDPT": ETA - ONE}[params.family]
    else:
        raise ValueError("seed must be 'monomial' or 'shifted'")
    return [base ** k for k in range(n + 1)]


def invariant_basis(params: ParamSet, n: int, seed: str = "monomial") -> InvariantBasis:
    seeds = seed_polys(params, n, seed)
    vecs = [xi_map_at(params.family, params.lam, params.ell, p) for p in seeds]
    for k, v in enumerate(vecs):
        if v.degree != params.ell + k:
            raise ArithmeticError(f"basis vector {k} has degree {v.degree}")
    return InvariantBasis(params, n, seeds, vecs)


def express_in_basis(vectors: list, target: Poly) -> tuple[list, Poly]:
    """Triangular solve using the distinct degrees; returns (coords, residual)."""
    coords = [Fraction(0)] * len(vectors)
    r = target
    for k in range(len(vectors) - 1, -1, -1):
        v = vectors[k]
        if r.degree == v.degree:
            c = r.lead / v.lead
            coords[k] = c
            r = r - v * c
    return coords, r


def invariance_check(params: ParamSet, n: int, seed: str = "monomial") -> VerificationReport:
    rep = _report("invariance", params, n)
    t = FAMILY_TABLES[params.family]
    lp = t.lam_prime(params.lam, params.ell)
    H0 = htilde0_op(params.family, lp)
    basis = invariant_basis(params, n, seed)
    for k, (p, v) in enumerate(zip(basis.seeds, basis.vectors)):
        hv = htilde_apply(params, v).value
        rhs = xi_map_at(params.family, params.lam, params.ell, H0.apply(p).as_poly())
        rep.check(f"intertwine{k}", hv == RF(rhs), hv - RF(rhs))
        poly = hv.as_poly()
        if poly is None:
            rep.check(f"member{k}", False, "not a polynomial")
            continue
        _, resid = express_in_basis(basis.vectors, poly)
        rep.check_zero(f"member{k}", resid)
    if params.ell >= 1:
        # the plain monomial space is not invariant
        raw = htilde_op(params).apply(ETA)
        rep.check("raw-monomial-not-invariant", raw.as_poly() is None)
    return rep


# ---------------------------------------------------------------------------
# singularities


def singularity_check(params: ParamSet) -> VerificationReport:
    """Simple zeros of xi, disjoint from the classical singular points,
    residue -2 of the first-order coefficient and a simple pole bound on the
    zeroth-order one at every zero of xi."""
    rep = _report("singularity", params)
    if params.ell == 0:
        return rep.skip("no extra singular points when l = 0")
    t = FAMILY_TABLES[params.family]
    x0 = _xi(params)
    rep.check("simple-zeros", poly_gcd(x0, x0.derive()).degree == 0)
    rep.check("avoids-classical", resultant(x0, t.c2) != 0)
    H = backward_op(params) @ forward_op(params)
    a2, a1, a0 = H.coeffs[2], H.coeffs[1], H.coeffs[0]
    B = a1 / a2
    C = a0 / a2
    rep.check("explicit-matches-composed", H == htilde_op(params))
    # B = num/den with den = xi * q (xi simple): residue -2 at every root of xi
    # means xi divides num + 2 q xi'
    q, r = B.den.divmod(x0.monic())
    if not r.is_zero():
        rep.check("residue", False, "xi does not divide the denominator of B")
    else:
        rest = (B.num + q * x0.monic().derive() * 2) % x0.monic()
        rep.check_zero("residue", rest)
    # xi^2 C keeps at most a simple pole, so xi C is regular at the zeros of xi
    xiC = C * RF(x0)
    rep.check("simple-pole", poly_gcd(xiC.den, x0).degree == 0)
    rep.extra["indicial"] = "rho(rho-1) - 2 rho = 0 -> {0, 3}"
    return rep
