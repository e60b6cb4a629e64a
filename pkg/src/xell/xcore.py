"""Exceptional X_l families: parameters, constants, deforming polynomials,
the Xi map, closed-form polynomials, weights and norms.

Parameters are written lambda = (g, h); the Laguerre families carry h = 0
internally and report ``h=None``.  Families:

    L1, L2   deformed Laguerre, domain (0, inf)
    J1, J2   deformed Jacobi, domain (-1, 1)
    hDPT     deformed Jacobi of hyperbolic type, domain (1, inf),
             finitely many members (n <= n_B - l)
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache

import mpmath

from .classical import classical_P, jacobi, laguerre
from .exactnum import ETA, ONE, Poly, sturm_count, to_rational
from .gammaprod import GammaPole, GammaProduct, GammaSum
from .report import VerificationReport

FAMILIES = ("L1", "L2", "J1", "J2", "hDPT")
HALF = Fraction(1, 2)

Lam = tuple  # (g, h) as Fractions


class BoundStateExceeded(ValueError):
    """hDPT degree beyond the finite set of square-integrable members."""


class DegenerateD0(ZeroDivisionError):
    pass


class DegenerateDenominator(ZeroDivisionError):
    pass


class OutOfRange(ValueError):
    """Parameters outside the range where the weight defines a measure."""


class XiRootInDomain(ValueError):
    """The deforming polynomial vanishes on the orthogonality domain."""


def kind_of(family: str) -> str:
    if family in ("L1", "L2"):
        return "L"
    if family in ("J1", "J2"):
        return "J"
    if family == "hDPT":
        return "hDPT"
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def n_bound(g, h) -> int:
    """Largest n with square-integrable P_n for the hyperbolic family:
    the greatest integer strictly below (h-g)/2."""
    x = (to_rational(h) - to_rational(g)) / 2
    return math.ceil(x) - 1


@dataclass(frozen=True)
class ParamSet:
    family: str
    g: Fraction
    h: Fraction | None = None
    ell: int = 0

    def __post_init__(self):
        kind = kind_of(self.family)
        object.__setattr__(self, "g", to_rational(self.g))
        if kind == "L":
            if self.h not in (None, 0):
                raise ValueError(f"{self.family} takes no h parameter")
            object.__setattr__(self, "h", None)
        else:
            if self.h is None:
                raise ValueError(f"{self.family} needs an h parameter")
            object.__setattr__(self, "h", to_rational(self.h))
        if not isinstance(self.ell, int) or self.ell < 0:
            raise ValueError("ell must be a non-negative integer")

    @property
    def kind(self) -> str:
        return kind_of(self.family)

    @property
    def lam(self) -> Lam:
        return (self.g, self.h if self.h is not None else Fraction(0))

    def with_lam(self, lam: Lam) -> "ParamSet":
        return replace(self, g=lam[0], h=None if self.kind == "L" else lam[1])

    def shifted(self, k) -> "ParamSet":
        """Parameters lambda + k*delta."""
        return self.with_lam(lam_add(self.lam, FAMILY_TABLES[self.family].delta, k))

    @property
    def n_B(self) -> int | None:
        return n_bound(self.g, self.h) if self.family == "hDPT" else None

    @property
    def in_paper_range(self) -> bool:
        g, h = self.g, self.h
        if self.kind == "L":
            return g > 0
        if self.family == "J1":
            return g > h > 0
        if self.family == "J2":
            return h > g > 0
        return h > g > 0 and self.ell < self.n_B

    @property
    def warning(self) -> str | None:
        return None if self.in_paper_range else "parameters outside the orthogonality range"

    def require_range(self):
        if not self.in_paper_range:
            raise OutOfRange(f"{self.family} g={self.g} h={self.h} ell={self.ell} "
                             "is outside the range where the weight is a measure")

    def label(self) -> dict:
        return {"g": str(self.g), "h": None if self.h is None else str(self.h)}

    def key(self) -> tuple:
        return (self.family, self.g, self.h, self.ell)

    def __str__(self) -> str:
        hs = "" if self.h is None else f", h={self.h}"
        return f"{self.family}(g={self.g}{hs}, ell={self.ell})"


def lam_add(lam: Lam, d: tuple, k=1) -> Lam:
    return (lam[0] + k * d[0], lam[1] + k * d[1])


# ---------------------------------------------------------------------------
# family constants


@dataclass(frozen=True)
class FamilyTable:
    """Constants of one family; functions of lambda (and n, l) where needed."""

    family: str
    delta: tuple
    delta_tilde: tuple
    cF: Fraction
    d2: Poly
    c2: Poly

    @property
    def kind(self) -> str:
        return kind_of(self.family)

    def d0(self, n, lam: Lam) -> Fraction:
        g, h = lam
        if self.family == "L1":
            return Fraction(1)
        if self.family == "J1":
            return n + h + HALF
        return n + g + HALF

    def d1(self, lam: Lam) -> Fraction:
        g, h = lam
        if self.family == "L1":
            return Fraction(1)
        if self.family == "J1":
            return h + HALF
        return g + HALF

    def d3(self, lam: Lam, ell: int) -> Fraction:
        g, h = lam
        return {"L1": g + ell - HALF, "L2": Fraction(1), "J1": g + ell - HALF,
                "J2": h + ell - HALF, "hDPT": h - ell + HALF}[self.family]

    def c1(self, lam: Lam) -> Poly:
        g, h = lam
        if self.kind == "L":
            return Poly((g + HALF, -1))
        if self.kind == "J":
            return Poly((h - g, -(g + h + 1)))
        return Poly((g + h, g - h + 1))

    def c1_tilde(self, lam: Lam, ell: int) -> Poly:
        g, h = lam
        if self.family == "L1":
            return Poly((g + ell - HALF, 1))
        if self.family == "L2":
            return -Poly((g + ell - HALF, 1))
        if self.family == "J1":
            return -Poly((g + h + 2 * ell - 1, g - h))
        if self.family == "J2":
            return Poly((g + h + 2 * ell - 1, g - h))
        return Poly((h - g - 2 * ell + 1, -(g + h)))

    def f(self, n, lam: Lam) -> Fraction:
        g, h = lam
        if self.kind == "L":
            return Fraction(-2)
        if self.kind == "J":
            return -2 * (n + g + h)
        return 2 * (n + g - h)

    @staticmethod
    def b(n) -> Fraction:
        """b_{n-1}(lambda) = -2n."""
        return Fraction(-2 * n)

    def E(self, n, lam: Lam) -> Fraction:
        g, h = lam
        if self.kind == "L":
            return Fraction(4 * n)
        if self.kind == "J":
            return 4 * n * (n + g + h)
        return 4 * n * (h - g - n)

    def E_tilde(self, lam: Lam, ell: int) -> Fraction:
        g, h = lam
        return {"L1": Fraction(-4 * ell), "L2": Fraction(4 * ell),
                "J1": 4 * ell * (ell + g - h - 1), "J2": 4 * ell * (ell - g + h - 1),
                "hDPT": 4 * ell * (g + h + 1 - ell)}[self.family]

    def lam_prime(self, lam: Lam, ell: int) -> Lam:
        """lambda + l*delta + delta_tilde, the index set of the base polynomial."""
        return lam_add(lam_add(lam, self.delta, ell), self.delta_tilde)


_ONE_P, _ONE_M = Poly((1, 1)), Poly((1, -1))
FAMILY_TABLES = {
    "L1": FamilyTable("L1", (1, 0), (-1, 0), Fraction(2), ONE, ETA),
    "L2": FamilyTable("L2", (1, 0), (1, 0), Fraction(2), -ETA, ETA),
    "J1": FamilyTable("J1", (1, 1), (-1, 1), Fraction(-4), -_ONE_P, _ONE_P * _ONE_M),
    "J2": FamilyTable("J2", (1, 1), (1, -1), Fraction(-4), _ONE_M, _ONE_P * _ONE_M),
    "hDPT": FamilyTable("hDPT", (1, -1), (1, 1), Fraction(4), _ONE_M, -(_ONE_P * _ONE_M)),
}


def family_table(params) -> FamilyTable:
    family = params.family if isinstance(params, ParamSet) else params
    kind_of(family)
    return FAMILY_TABLES[family]


# ---------------------------------------------------------------------------
# deforming polynomial, Xi map, closed form


def xi_indices(family: str, lam: Lam, ell: int) -> tuple:
    g, h = lam
    if family == "L1":
        return (g + ell - Fraction(3, 2), None)
    if family == "L2":
        return (-g - ell - HALF, None)
    if family == "J1":
        return (g + ell - Fraction(3, 2), -h - ell - HALF)
    if family == "J2":
        return (-g - ell - HALF, h + ell - Fraction(3, 2))
    return (-g - ell - HALF, -h + ell - Fraction(3, 2))


@lru_cache(maxsize=None)
def xi_at(family: str, lam: Lam, ell: int) -> Poly:
    """xi_l(eta; lam); the zero polynomial for l < 0."""
    if ell < 0:
        return Poly()
    a, b = xi_indices(family, lam, ell)
    if family == "L1":
        return laguerre(ell, a).compose_affine(-1)
    if family == "L2":
        return laguerre(ell, a)
    return jacobi(ell, a, b)


def xi(params: ParamSet, shift=0) -> Poly:
    """xi_l(eta; lambda + shift*delta)."""
    t = FAMILY_TABLES[params.family]
    return xi_at(params.family, lam_add(params.lam, t.delta, shift), params.ell)


def xi_map_at(family: str, lam: Lam, ell: int, p: Poly) -> Poly:
    t = FAMILY_TABLES[family]
    return (xi_at(family, lam_add(lam, t.delta), ell) * p) * t.d1(lam) \
        - t.d2 * xi_at(family, lam, ell) * p.derive()


def xi_map(params: ParamSet, p: Poly) -> Poly:
    """Xi_{l,lambda}[p] = d1 xi(lambda+delta) p - d2 xi(lambda) p'."""
    return xi_map_at(params.family, params.lam, params.ell, p)


def base_P(family: str, lam: Lam, n: int) -> Poly:
    """Classical P_n(eta; lam) of the family's kind (zero for n < 0)."""
    if n < 0:
        return Poly()
    g, h = lam
    return classical_P(n, kind_of(family), g, None if kind_of(family) == "L" else h)


@lru_cache(maxsize=None)
def xpoly_at(family: str, lam: Lam, ell: int, n: int) -> Poly:
    """Closed-form P_{l,n}(eta; lam) without range checks (zero for n < 0)."""
    if n < 0:
        return Poly()
    t = FAMILY_TABLES[family]
    d0 = t.d0(n, lam)
    if d0 == 0:
        raise DegenerateD0(f"d0({n}, {lam}) = 0 for {family}")
    return xi_map_at(family, lam, ell, base_P(family, t.lam_prime(lam, ell), n)) / d0


@dataclass
class XPolynomial:
    params: ParamSet
    n: int
    poly: Poly | None
    provenance: str
    numeric: tuple | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        out = {"family": self.params.family, **self.params.label(), "ell": self.params.ell,
               "n": self.n, "provenance": self.provenance}
        if self.poly is not None:
            out["coeffs"] = self.poly.to_json()
        if self.numeric is not None:
            out["coeffs_float"] = [float(c) for c in self.numeric]
        return out


def check_bound(params: ParamSet, n: int):
    if params.family == "hDPT" and n > params.n_B - params.ell:
        raise BoundStateExceeded(
            f"hDPT with g={params.g}, h={params.h}: n={n} exceeds n_B - l = "
            f"{params.n_B} - {params.ell}")


def xpoly(params: ParamSet, n: int, strict: bool = True) -> XPolynomial:
    """Closed-form X_l polynomial.  ``strict=False`` skips the hDPT bound,
    giving the formal polynomial used in generating-function identities."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if strict:
        check_bound(params, n)
    return XPolynomial(params, n, xpoly_at(params.family, params.lam, params.ell, n), "closed-form")


def xpoly_original_J2(params: ParamSet, n: int) -> XPolynomial:
    """The older three-term form of the J2 polynomial, with xi_k = 0 for k < 0."""
    if params.family != "J2":
        raise ValueError("the original form is available for J2 only")
    g, h, ell = params.g, params.h, params.ell
    den_a = -g + h + 2 * ell - 2
    den_b = g + h + 2 * n + 2 * ell - 1
    den_c = 2 * g + 2 * n + 1
    if den_a == 0 or den_b == 0 or den_c == 0:
        raise DegenerateDenominator(f"vanishing denominator for g={g}, h={h}, l={ell}, n={n}")
    xa = xi_at("J2", (g + 1, h + 1), ell)
    xb = xi_at("J2", (g, h + 2), ell - 1)
    xc = xi_at("J2", (g + 1, h + 3), ell - 2)
    lam_l = (g + ell, h + ell)
    first = xa + xb * (2 * n * (-g + h + ell - 1) / (den_a * den_b)) \
        - xc * (n * (2 * h + 4 * ell - 3) / (den_c * den_a))
    second = xb * ((-g + h + ell - 1) * (2 * g + 2 * n + 2 * ell - 1) / (den_c * den_b))
    poly = first * base_P("J2", lam_l, n) + second * base_P("J2", lam_l, n - 1)
    return XPolynomial(params, n, poly, "original-J2")


# ---------------------------------------------------------------------------
# weights and norms


@dataclass(frozen=True)
class WeightFactor:
    """W(eta; lambda + l delta) / xi_l(eta; lambda)^2.

    The base weight is ``2**two_power * (eta-type factors)``:
      L:    exp(-eta) * eta**a                 on (0, inf)
      J:    (1-eta)**a * (1+eta)**b            on (-1, 1)
      hDPT: (eta-1)**a * (eta+1)**b            on (1, inf)
    with prefactor 1/2 for L.
    """

    kind: str
    a: Fraction
    b: Fraction | None
    two_power: Fraction
    domain: tuple
    divisor: Poly

    @property
    def prefactor(self) -> float:
        return 2.0 ** float(self.two_power)

    def base(self, eta):
        """Base weight evaluated elementwise on a numpy array."""
        import numpy as np
        pf = self.prefactor
        a = float(self.a)
        if self.kind == "L":
            return pf * np.exp(-eta) * eta ** a
        b = float(self.b)
        if self.kind == "J":
            return pf * (1 - eta) ** a * (1 + eta) ** b
        return pf * (eta - 1) ** a * (eta + 1) ** b


DOMAINS = {"L": (Fraction(0), math.inf), "J": (Fraction(-1), Fraction(1)), "hDPT": (Fraction(1), math.inf)}


def base_weight(kind: str, lam: Lam) -> tuple:
    """Exponents (a, b) of the classical weight W(eta; lam)."""
    g, h = lam
    if kind == "L":
        return g - HALF, None
    if kind == "J":
        return g - HALF, h - HALF
    return g - HALF, -h - HALF


def weight_two_power(kind: str, lam: Lam) -> Fraction:
    """Exponent e with the weight prefactor equal to 2**e."""
    g, h = lam
    return {"L": Fraction(-1), "J": -(g + h + 1), "hDPT": -(g - h + 1)}[kind]


def roots_in_closed_domain(p: Poly, kind: str) -> int:
    lo, hi = DOMAINS[kind]
    count = sturm_count(p, lo, hi)
    return count + (1 if p(lo) == 0 else 0)


def weight_factor(params: ParamSet) -> WeightFactor:
    params.require_range()
    t = FAMILY_TABLES[params.family]
    lam_l = lam_add(params.lam, t.delta, params.ell)
    a, b = base_weight(params.kind, lam_l)
    divisor = xi(params)
    if divisor.degree > 0 and roots_in_closed_domain(divisor, params.kind):
        raise XiRootInDomain(f"xi has a root in the closed domain for {params}")
    return WeightFactor(params.kind, a, b, weight_two_power(params.kind, lam_l),
                        DOMAINS[params.kind], divisor)


def base_norm(kind: str, lam: Lam, n: int) -> GammaProduct:
    """h_n(lam) of the classical family; raises GammaPole at poles."""
    g, h = lam
    if n < 0:
        return GammaProduct(0)
    nf = math.factorial(n)
    if kind == "L":
        return GammaProduct.ratio([n + g + HALF], [], Fraction(1, 2 * nf))
    if kind == "J":
        return GammaProduct.ratio([n + g + HALF, n + h + HALF], [n + g + h],
                                  1 / (2 * nf * (2 * n + g + h)))
    return GammaProduct.ratio([n + g + HALF, h - g - n + 1], [h - n + HALF],
                              1 / (2 * nf * (h - g - 2 * n)))


def norm_factor(family: str, lam: Lam, ell: int, n: int) -> Fraction:
    g, h = lam
    if ell == 0:
        return Fraction(1)
    if family == "L1":
        return (n + g + 2 * ell - HALF) / (n + g + ell - HALF)
    if family == "L2":
        return (n + g + ell + HALF) / (n + g + HALF)
    if family == "J1":
        return (n + h + ell + HALF) * (n + g + 2 * ell - HALF) / ((n + h + HALF) * (n + g + ell - HALF))
    if family == "J2":
        return (n + g + ell + HALF) * (n + h + 2 * ell - HALF) / ((n + g + HALF) * (n + h + ell - HALF))
    return (n + g + ell + HALF) * (h - n - 2 * ell + HALF) / ((n + g + HALF) * (h - n - ell + HALF))


@dataclass
class NormValue:
    gamma_product: GammaProduct
    float_value: float
    mp_value: object = field(repr=False, default=None)

    def to_json(self) -> dict:
        return {"symbolic": self.gamma_product.to_json(), "repr": repr(self.gamma_product),
                "float": repr(self.float_value), "value_50": mpmath.nstr(self.mp_value, 50)}


def norm_at(family: str, lam: Lam, ell: int, n: int) -> GammaProduct:
    t = FAMILY_TABLES[family]
    lam_l = lam_add(lam, t.delta, ell)
    return base_norm(kind_of(family), lam_l, n) * norm_factor(family, lam, ell, n)


def norm(params: ParamSet, n: int) -> NormValue:
    """h_{l,n}(lambda) as an exact Gamma product and a 50-digit value."""
    params.require_range()
    check_bound(params, n)
    gp = norm_at(params.family, params.lam, params.ell, n)
    mp = gp.to_mpf(50)
    return NormValue(gp, float(mp), mp)


def norm_relation(params: ParamSet, n: int) -> tuple[GammaSum, GammaSum]:
    """Both sides of d0^2 h_{l,n} = d1 d3 h_n(lam') + f_n(lam')^2 h_{n-1}(lam'+delta)/4."""
    t = FAMILY_TABLES[params.family]
    lam, ell = params.lam, params.ell
    lp = t.lam_prime(lam, ell)
    lhs = norm_at(params.family, lam, ell, n) * (t.d0(n, lam) ** 2)
    rhs = GammaSum([base_norm(params.kind, lp, n) * (t.d1(lam) * t.d3(lam_add(lam, t.delta, ell), ell))])
    if n >= 1:
        rhs = rhs + base_norm(params.kind, lam_add(lp, t.delta), n - 1) * (t.f(n, lp) ** 2 / 4)
    return GammaSum([lhs]), rhs


def construction_check(params: ParamSet, n: int) -> VerificationReport:
    """Degree l+n, P_{l,0} = xi_l(lambda+delta), and no root of xi_l(lambda) on the closed domain."""
    rep = VerificationReport(suite="xi", family=params.family, params=params.label(),
                             ell=params.ell, n=n)
    P = xpoly(params, n).poly
    rep.check("degree", P.degree == params.ell + n, P.degree)
    if n == 0:
        rep.check_zero("lowest", P - xi(params, 1))
    if params.in_paper_range:
        rep.check("xi-root-free", roots_in_closed_domain(xi(params), params.kind) == 0)
    else:
        rep.detail = params.warning
    return rep


__all__ = [
    "FAMILIES", "ParamSet", "FamilyTable", "family_table", "xi", "xi_at", "xi_map", "xi_map_at",
    "xpoly", "xpoly_at", "XPolynomial", "xpoly_original_J2", "weight_factor", "WeightFactor",
    "norm", "NormValue", "norm_at", "base_norm", "norm_relation", "n_bound", "BoundStateExceeded",
    "DegenerateD0", "DegenerateDenominator", "OutOfRange", "XiRootInDomain", "GammaPole", "lam_add",
    "base_P", "kind_of", "FAMILY_TABLES", "construction_check", "DOMAINS",
]
