from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xell.exactnum import (ETA, ONE, BadConstantTerm, NotDivisible, Poly, RationalFunction,
                           TruncatedSeries, poly_divexact, poly_gcd, resultant, sturm_count,
                           to_rational)
from xell.xcore import xi_at

from strategies import nonzero_polys, polys, rationals, series


# examples


def test_derive_constant_is_zero():
    assert Poly([F(7, 3)]).derive().is_zero()


def test_difference_of_squares():
    assert (ETA + 1) * (ETA - 1) == ETA ** 2 - 1


def test_compose_affine_even_parity():
    assert (ETA ** 2).compose_affine(-1, 0) == ETA ** 2


def test_divexact_examples():
    assert poly_divexact(ETA ** 2 - 1, ETA - 1) == ETA + 1
    with pytest.raises(NotDivisible) as info:
        poly_divexact(ETA ** 2, ETA + 1)
    assert info.value.remainder == ONE


def test_divexact_xi_product():
    a = xi_at("L1", (F(2), F(0)), 1)
    b = xi_at("L1", (F(1), F(0)), 1)
    # xi_1^{L1}(eta; g) = eta + g + 1/2
    assert a == ETA + F(5, 2) and b == ETA + F(3, 2)
    assert poly_divexact(a * b, b) == a


def test_gcd_examples():
    assert poly_gcd(ETA ** 2 - 1, ETA - 1) == ETA - 1
    assert poly_gcd((ETA - 1) ** 2, 2 * (ETA - 1)) == ETA - 1
    xi2 = xi_at("L1", (F(1), F(0)), 2)
    assert poly_gcd(xi2, xi2.derive()) == ONE


def test_series_examples():
    t = TruncatedSeries.variable("t", 4)
    assert t.exp() == TruncatedSeries([1, 1, F(1, 2), F(1, 6), F(1, 24)])
    assert (1 + t * t).sqrt() == TruncatedSeries([1, 0, F(1, 2), 0, F(-1, 8)])
    t3 = TruncatedSeries.variable("t", 3)
    assert 1 / (1 - t3) == TruncatedSeries([1, 1, 1, 1])


def test_series_sqrt_needs_unit_constant():
    with pytest.raises(BadConstantTerm):
        TruncatedSeries([2, 1, 0]).sqrt()


def test_floats_rejected():
    with pytest.raises(TypeError):
        to_rational(0.5)
    assert to_rational("3/4") == F(3, 4)


def test_sturm_count_and_resultant():
    p = (ETA - 1) * (ETA - 2) * (ETA + 5)
    assert sturm_count(p, 0, 3) == 2
    assert sturm_count(p, -10, 10) == 3
    assert resultant(ETA - 1, ETA - 2) != 0
    assert resultant((ETA - 1) * ETA, ETA - 1) == 0


def test_rational_function_reduces():
    r = RationalFunction(ETA ** 2 - 1, ETA - 1)
    assert r.is_poly() and r.as_poly() == ETA + 1


# properties


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == Poly()


@given(polys, polys, rationals)
def test_evaluation_is_a_homomorphism(p, q, x):
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)


@given(polys, rationals, rationals, rationals)
def test_compose_affine_matches_evaluation(p, a, b, x):
    assert p.compose_affine(a, b)(x) == p(a * x + b)


@given(polys, polys)
def test_leibniz(p, q):
    assert (p * q).derive() == p.derive() * q + p * q.derive()


@given(polys, nonzero_polys)
def test_divexact_inverts_mul(p, q):
    assert poly_divexact(p * q, q) == p


@given(nonzero_polys, nonzero_polys)
def test_divmod(p, q):
    quo, rem = p.divmod(q)
    assert quo * q + rem == p
    assert rem.is_zero() or rem.degree < q.degree


@given(nonzero_polys, nonzero_polys, nonzero_polys)
@settings(max_examples=50)
def test_gcd_divides(p, q, r):
    g = poly_gcd(p * r, q * r)
    assert ((p * r) % g).is_zero() and ((q * r) % g).is_zero()
    assert (g % r.monic()).is_zero()


@given(series(5, 1))
def test_sqrt_squares_back(a):
    s = a.sqrt()
    assert s * s == a


@given(series(5, 0), series(5, 0))
def test_exp_adds(a, b):
    assert (a + b).exp() == a.exp() * b.exp()


@given(series(5))
def test_inverse(a):
    if a[0] == 0:
        return
    assert a * a.inverse() == TruncatedSeries.constant(1, "t", 5)


@given(series(5, 1), st.fractions(min_value=-3, max_value=3, max_denominator=4))
def test_rational_power(a, r):
    assert (a ** r) * (a ** (1 - r)) == a
