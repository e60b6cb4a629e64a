"""Symbolic products of Gamma values at rational arguments.

Every Gamma factor is reduced to an argument in (0, 1) by the functional
equation, so two products are equal exactly when their reduced forms are.
Gamma(1) = 1 is absorbed into the rational prefactor.
"""
from __future__ import annotations

import math
from fractions import Fraction

import mpmath

from .exactnum import to_rational


class GammaPole(ArithmeticError):
    """Gamma evaluated at a non-positive integer."""


def _reduce(a: Fraction) -> tuple[Fraction, Fraction | None]:
    """Write Gamma(a) = c * Gamma(r) with r in (0, 1); r is None when a is a
    positive integer (Gamma(r) := 1)."""
    if a.denominator == 1:
        if a <= 0:
            raise GammaPole(f"Gamma has a pole at {a}")
        return Fraction(math.factorial(int(a) - 1)), None
    r = a - math.floor(a)
    c = Fraction(1)
    if a > r:
        x = r
        while x < a:
            c *= x
            x += 1
    else:
        x = a
        while x < r:
            c /= x
            x += 1
    return c, r


class GammaProduct:
    """``prefactor * prod Gamma(r)**k`` with reduced arguments ``r``."""

    __slots__ = ("prefactor", "factors")

    def __init__(self, prefactor=1, factors: dict | None = None):
        self.prefactor = Fraction(prefactor)
        self.factors = {r: k for r, k in (factors or {}).items() if k != 0}

    @classmethod
    def gamma(cls, a) -> "GammaProduct":
        c, r = _reduce(to_rational(a))
        return cls(c, {} if r is None else {r: 1})

    @classmethod
    def ratio(cls, num_args, den_args, prefactor=1) -> "GammaProduct":
        out = cls(prefactor)
        for a in num_args:
            out = out * cls.gamma(a)
        for a in den_args:
            out = out / cls.gamma(a)
        return out

    def key(self) -> tuple:
        return tuple(sorted(self.factors.items()))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GammaProduct(self.prefactor * other, self.factors)
        f = dict(self.factors)
        for r, k in other.factors.items():
            f[r] = f.get(r, 0) + k
        return GammaProduct(self.prefactor * other.prefactor, f)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return GammaProduct(self.prefactor / other, self.factors)
        f = dict(self.factors)
        for r, k in other.factors.items():
            f[r] = f.get(r, 0) - k
        return GammaProduct(self.prefactor / other.prefactor, f)

    def is_zero(self) -> bool:
        return self.prefactor == 0

    def to_mpf(self, dps: int = 50):
        with mpmath.workdps(dps):
            v = mpmath.mpf(self.prefactor.numerator) / self.prefactor.denominator
            for r, k in self.factors.items():
                v *= mpmath.gamma(mpmath.mpf(r.numerator) / r.denominator) ** k
            return +v

    def __float__(self) -> float:
        return float(self.to_mpf())

    def __repr__(self) -> str:
        if not self.factors:
            return str(self.prefactor)
        parts = [f"Gamma({r})" + (f"^{k}" if k != 1 else "") for r, k in sorted(self.factors.items())]
        return f"{self.prefactor}*" + "*".join(parts)

    def to_json(self) -> dict:
        return {"prefactor": str(self.prefactor),
                "gamma": [[str(r), k] for r, k in sorted(self.factors.items())]}


class GammaSum:
    """Finite sum of GammaProducts, canonicalised by grouping equal factor sets.

    Grouping identical reduced factor sets gives an exact equality test
    whenever all terms reduce to the same transcendental basis, which is the
    case for the norm relations checked in this package.
    """

    def __init__(self, terms=()):
        acc: dict = {}
        for t in terms:
            if isinstance(t, GammaSum):
                for k, c in t.terms.items():
                    acc[k] = acc.get(k, 0) + c
            else:
                acc[t.key()] = acc.get(t.key(), 0) + t.prefactor
        self.terms = {k: c for k, c in acc.items() if c != 0}

    def __add__(self, other):
        return GammaSum([self, other if isinstance(other, GammaSum) else GammaSum([other])])

    def __eq__(self, other) -> bool:
        if not isinstance(other, GammaSum):
            other = GammaSum([other])
        return self.terms == other.terms

    __hash__ = None

    def to_mpf(self, dps: int = 50):
        with mpmath.workdps(dps):
            return +sum((GammaProduct(c, dict(k)).to_mpf(dps) for k, c in self.terms.items()),
                        mpmath.mpf(0))

    def __repr__(self) -> str:
        return " + ".join(repr(GammaProduct(c, dict(k))) for k, c in self.terms.items()) or "0"
