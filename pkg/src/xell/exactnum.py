"""Exact rational arithmetic: dense polynomials, rational functions and
truncated power series over Q.

Scalars are :class:`fractions.Fraction` throughout.  A ``Fraction`` is always
reduced with a positive denominator and serializes as ``"num/den"`` (or
``"num"``), which is the wire format used everywhere in this package.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]


class NotDivisible(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""

    def __init__(self, remainder: "Poly"):
        super().__init__(f"division leaves nonzero remainder {remainder}")
        self.remainder = remainder


class BadConstantTerm(ValueError):
    """A series operation's precondition on the constant term is violated."""


def to_rational(value) -> Fraction:
    """Coerce ``int``, ``Fraction`` or a ``"num/den"`` string to ``Fraction``.

    Floats are rejected: parameters enter the engine exactly or not at all.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rational_str(value: Fraction) -> str:
    return str(Fraction(value))


def rational_sqrt(value: Fraction) -> Fraction:
    """Exact square root of a non-negative rational, or BadConstantTerm."""
    value = Fraction(value)
    if value < 0:
        raise BadConstantTerm(f"{value} has no real square root")
    rn, rd = math.isqrt(value.numerator), math.isqrt(value.denominator)
    if rn * rn != value.numerator or rd * rd != value.denominator:
        raise BadConstantTerm(f"{value} is not the square of a rational")
    return Fraction(rn, rd)


def poch(a, k: int):
    """Rising factorial (a)_k; works for any ring element supporting ``*``."""
    out = Fraction(1)
    for j in range(k):
        out = out * (a + j)
    return out


class Poly:
    """Dense univariate polynomial over Q, coefficients in ascending degree.

    Instances are immutable.  The zero polynomial has no coefficients and
    degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def linear(cls, c0, c1) -> "Poly":
        return cls((c0, c1))

    # basic properties ---------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly([{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("η" if k == 1 else f"η^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(reversed(terms)).replace("+ -", "- ")

    # ring operations ----------------------------------------------------
    @staticmethod
    def _coerce(other) -> "Poly | None":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("polynomial divided by zero scalar")
            return Poly([c / other for c in self.coeffs])
        return NotImplemented

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out, base = Poly.const(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # calculus and evaluation ---------------------------------------------
    def derive(self, k: int = 1) -> "Poly":
        p = self
        for _ in range(k):
            p = Poly([i * c for i, c in enumerate(p.coeffs)][1:])
        return p

    def __call__(self, x):
        """Horner evaluation; ``x`` may be Fraction, float, complex, mpmath
        number, numpy array, or another Poly (composition)."""
        if isinstance(x, Poly):
            out = Poly()
            for c in reversed(self.coeffs):
                out = out * x + c
            return out
        if not self.coeffs:
            return Fraction(0) if isinstance(x, (int, Fraction)) else 0 * x
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def compose_affine(self, a, b=0) -> "Poly":
        """Return p(a*η + b)."""
        return self(Poly((b, a)))

    def to_floats(self) -> list[float]:
        return [float(c) for c in self.coeffs]

    # division ------------------------------------------------------------
    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return Poly(), self
        inv_lead = 1 / other.lead
        quot = [Fraction(0)] * (len(rem) - dq)
        oc = other.coeffs
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] * inv_lead
            quot[k] = c
            if c:
                for j in range(dq + 1):
                    rem[k + j] -= c * oc[j]
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        return self / self.lead if self.coeffs else self

    # serialization -------------------------------------------------------
    def to_json(self) -> list[str]:
        return [rational_str(c) for c in self.coeffs] or ["0"]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Poly":
        return cls(Fraction(s) for s in data)


ETA = Poly.x()
ONE = Poly.const(1)
ZERO = Poly()


def poly_divexact(num: Poly, den: Poly) -> Poly:
    """Quotient ``q`` with ``num == q*den``; NotDivisible otherwise."""
    q, r = num.divmod(den)
    if not r.is_zero():
        raise NotDivisible(r)
    return q


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd over Q by the Euclidean algorithm."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    a, b = p.monic(), q.monic()
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a.monic()


def resultant(p: Poly, q: Poly) -> Fraction:
    """Resultant of two nonzero polynomials via the Euclidean remainder rule."""
    if p.is_zero() or q.is_zero():
        return Fraction(0)
    m, n = p.degree, q.degree
    if n == 0:
        return q.lead ** m
    if m == 0:
        return p.lead ** n
    r = p % q
    if r.is_zero():
        return Fraction(0)
    sign = -1 if (m * n) % 2 else 1
    return sign * q.lead ** (m - r.degree) * resultant(q, r)


def sturm_count(p: Poly, lo, hi) -> int:
    """Number of distinct real roots of ``p`` in the half-open (lo, hi].

    ``lo``/``hi`` may be ``float('-inf')``/``float('inf')``.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    seq = [p, p.derive()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        seq.append(-r)
    seq.pop()

    def sign_changes(x) -> int:
        signs = []
        for s in seq:
            if x == math.inf:
                v = s.lead
            elif x == -math.inf:
                v = s.lead * (-1) ** s.degree
            else:
                v = s(Fraction(x))
            if v != 0:
                signs.append(v > 0)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    return sign_changes(lo) - sign_changes(hi)


class RationalFunction:
    """Reduced quotient of polynomials with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, *, reduced: bool = False):
        num = num if isinstance(num, Poly) else Poly.const(num)
        den = ONE if den is None else (den if isinstance(den, Poly) else Poly.const(den))
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not reduced:
            if num.is_zero():
                den = ONE
            elif den.degree > 0:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = poly_divexact(num, g), poly_divexact(den, g)
            lc = den.lead
            num, den = num / lc, den / lc
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def coerce(cls, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, Poly):
            return cls(x, ONE, reduced=True)
        return cls(Poly.const(x), ONE, reduced=True)

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> Poly | None:
        return self.num if self.is_poly() else None

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        o = self.coerce(other)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        return self + (-self.coerce(other))

    def __rsub__(self, other):
        return self.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalFunction(self.num * other, self.den, reduced=other != 0)
        o = self.coerce(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self.coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self.coerce(other) / self

    def derive(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derive() * self.den - self.num * self.den.derive(), self.den * self.den
        )

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def __eq__(self, other) -> bool:
        if isinstance(other, (Poly, int, Fraction, RationalFunction)):
            o = self.coerce(other)
            return self.num == o.num and self.den == o.den
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        if self.is_poly():
            return f"RationalFunction({self.num})"
        return f"RationalFunction(({self.num}) / ({self.den}))"


# ---------------------------------------------------------------------------
# truncated power series


def _is_zero(c) -> bool:
    return c.is_zero() if isinstance(c, TruncatedSeries) else c == 0


def _inv(c):
    if isinstance(c, TruncatedSeries):
        return c.inverse()
    if c == 0:
        raise BadConstantTerm("constant term is not invertible")
    return 1 / Fraction(c)


def _sqrt(c):
    return c.sqrt() if isinstance(c, TruncatedSeries) else rational_sqrt(c)


def _exp(c):
    if isinstance(c, TruncatedSeries):
        return c.exp()
    if c != 0:
        raise BadConstantTerm("exp requires a zero constant term")
    return Fraction(1)


def _pow(c, r: Fraction):
    if isinstance(c, TruncatedSeries):
        return c ** r
    if c != 1:
        raise BadConstantTerm("rational power requires constant term 1")
    return Fraction(1)


class TruncatedSeries:
    """Power series in one variable truncated at ``t^order``.

    Coefficients are Fractions, or (for the bivariate case) series in a
    different variable, in which case this series is the outer one.  Values
    from a different variable act as scalars.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Sequence, var: str = "t"):
        if not coeffs:
            raise ValueError("a truncated series needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(
            c if isinstance(c, TruncatedSeries) else Fraction(c) for c in coeffs))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def variable(cls, var: str, order: int, inner=None) -> "TruncatedSeries":
        """The series ``var`` itself; ``inner`` is a template for nested coefficients."""
        one = Fraction(1) if inner is None else inner * 0 + 1
        zero = one * 0
        c = [zero] * (order + 1)
        if order >= 1:
            c[1] = one
        return cls(c, var)

    @classmethod
    def constant(cls, value, var: str, order: int) -> "TruncatedSeries":
        zero = value * 0
        return cls([value] + [zero] * order, var)

    @classmethod
    def from_poly(cls, p: Poly, var: str, order: int) -> "TruncatedSeries":
        return cls([p[k] for k in range(order + 1)], var)

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def is_zero(self) -> bool:
        return all(_is_zero(c) for c in self.coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs[: order + 1], self.var)

    def _same(self, other) -> bool:
        return isinstance(other, TruncatedSeries) and other.var == self.var

    def __add__(self, other):
        if self._same(other):
            n = min(self.order, other.order)
            return TruncatedSeries([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)], self.var)
        c = list(self.coeffs)
        c[0] = c[0] + other
        return TruncatedSeries(c, self.var)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not self._same(other):
            return TruncatedSeries([c * other for c in self.coeffs], self.var)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            acc = a[0] * b[k]
            for j in range(1, k + 1):
                acc = acc + a[j] * b[k - j]
            out.append(acc)
        return TruncatedSeries(out, self.var)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        a = self.coeffs
        inv0 = _inv(a[0])
        out = [inv0]
        for k in range(1, len(a)):
            acc = a[1] * out[k - 1]
            for j in range(2, k + 1):
                acc = acc + a[j] * out[k - j]
            out.append(-(acc * inv0))
        return TruncatedSeries(out, self.var)

    def __truediv__(self, other):
        if self._same(other):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * _inv(other)

    def __rtruediv__(self, other):
        return self.inverse() * other

    def sqrt(self) -> "TruncatedSeries":
        """Square root by coefficient-wise Newton (the degree-by-degree solve)."""
        a = self.coeffs
        b0 = _sqrt(a[0])
        inv2b0 = _inv(b0 * 2)
        out = [b0]
        for k in range(1, len(a)):
            acc = a[k]
            for j in range(1, k):
                acc = acc - out[j] * out[k - j]
            out.append(acc * inv2b0)
        return TruncatedSeries(out, self.var)

    def exp(self) -> "TruncatedSeries":
        a = self.coeffs
        out = [_exp(a[0])]
        for k in range(1, len(a)):
            acc = a[1] * out[k - 1]
            for j in range(2, k + 1):
                acc = acc + a[j] * out[k - j] * j
            out.append(acc * Fraction(1, k))
        return TruncatedSeries(out, self.var)

    def __pow__(self, r) -> "TruncatedSeries":
        """Power with rational exponent; the constant term must be 1 (recursively
        for nested series) unless ``r`` is a non-negative integer."""
        r = to_rational(r) if not isinstance(r, Fraction) else r
        if r.denominator == 1 and r >= 0:
            out = TruncatedSeries.constant(self.coeffs[0] * 0 + 1, self.var, self.order)
            for _ in range(int(r)):
                out = out * self
            return out
        a = self.coeffs
        b0 = _pow(a[0], r)
        inv_a0 = _inv(a[0])
        out = [b0]
        for k in range(1, len(a)):
            acc = a[1] * out[k - 1] * ((r + 1) * 1 - k)
            for j in range(2, k + 1):
                acc = acc + a[j] * out[k - j] * ((r + 1) * j - k)
            out.append(acc * inv_a0 * Fraction(1, k))
        return TruncatedSeries(out, self.var)

    def shift_down(self) -> "TruncatedSeries":
        """Divide by the variable; requires a zero constant term."""
        if not _is_zero(self.coeffs[0]):
            raise BadConstantTerm("division by the variable needs a zero constant term")
        return TruncatedSeries(self.coeffs[1:], self.var)

    def derive(self) -> "TruncatedSeries":
        if self.order == 0:
            return TruncatedSeries([self.coeffs[0] * 0], self.var)
        return TruncatedSeries([c * k for k, c in enumerate(self.coeffs)][1:], self.var)

    def __eq__(self, other) -> bool:
        if self._same(other):
            return self.order == other.order and all(
                (a == b) if not isinstance(a, TruncatedSeries) else (a - b).is_zero()
                for a, b in zip(self.coeffs, other.coeffs))
        return NotImplemented

    __hash__ = None

    def first_mismatch(self, other: "TruncatedSeries"):
        """Index (tuple for nested series) of the first differing coefficient."""
        for k, (a, b) in enumerate(zip(self.coeffs, other.coeffs)):
            if isinstance(a, TruncatedSeries):
                sub = a.first_mismatch(b)
                if sub is not None:
                    return (k,) + sub
            elif a != b:
                return (k,)
        return None

    def to_json(self):
        return [c.to_json() if isinstance(c, TruncatedSeries) else rational_str(c)
                for c in self.coeffs]

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.var}, {self.to_json()})"
