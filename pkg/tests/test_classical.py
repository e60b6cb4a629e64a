from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from xell.classical import (ClassicalParams, classical_P, classical_shift_check, classical_suite,
                            genfun_classical, jacobi, laguerre, limit_JtoL_check, recurrence_coeffs)
from xell.exactnum import ETA, ONE, Poly

HALF = F(1, 2)


def test_laguerre_examples():
    assert laguerre(0, F(7, 3)) == ONE
    a = F(5, 7)
    assert laguerre(1, a) == (a + 1) - ETA
    assert laguerre(2, 0) == Poly([1, -2, HALF])


def test_jacobi_examples():
    assert jacobi(0, 3, 4) == ONE
    a, b = F(1, 3), F(2, 5)
    assert jacobi(1, a, b) == (a + 1) - (a + b + 2) * (ONE - ETA) / 2
    P = jacobi(2, 0, 0)
    assert P.compose_affine(-1) == P


def test_classical_P_examples():
    assert classical_P(1, "L1", 1) == F(3, 2) - ETA
    assert classical_P(0, "J2", 1, 3) == ONE
    assert classical_P(1, "hDPT", 1, 4) == jacobi(1, HALF, F(-9, 2))


@pytest.mark.parametrize("n,alpha", [(0, 0), (1, HALF), (3, F(5, 2)), (5, F(-1, 3))])
def test_laguerre_against_scipy(n, alpha):
    for x in (0.3, 1.7, 4.0):
        assert float(laguerre(n, alpha)(F(x))) == pytest.approx(
            special.eval_genlaguerre(n, float(alpha), x), rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("n,a,b", [(0, 0, 0), (2, HALF, F(3, 2)), (4, F(5, 2), F(-1, 3)), (3, 1, 2)])
def test_jacobi_against_scipy(n, a, b):
    for x in (-0.6, 0.1, 0.9):
        assert float(jacobi(n, a, b)(F(x))) == pytest.approx(
            special.eval_jacobi(n, float(a), float(b), x), rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("cp", [ClassicalParams("Laguerre", HALF, None, 3),
                                ClassicalParams("Jacobi", F(3, 2), F(-7, 2), 2),
                                ClassicalParams("Laguerre", 0, None, 1)])
def test_shift_check(cp):
    assert classical_shift_check(cp).passed


def test_suite_examples():
    rep = classical_suite(ClassicalParams("Laguerre", HALF, None, 2))
    assert rep.passed and rep.checks["diffeq"]
    rep = classical_suite(ClassicalParams("Jacobi", 1, 2, 2))
    assert rep.passed and rep.checks["Jid1"]
    rep = classical_suite(ClassicalParams("Laguerre", F(3, 2), None, 0))
    assert rep.checks["recurrence"]


def test_recurrence_examples():
    rc = recurrence_coeffs(ClassicalParams("Laguerre", 0, None, 1))
    assert (rc.A, rc.B, rc.C) == (-2, 3, -1)
    cp = ClassicalParams("Jacobi", 0, 0, 1)
    rc = recurrence_coeffs(cp)
    assert rc.B == 0
    assert ETA * jacobi(1, 0, 0) == rc.A * jacobi(2, 0, 0) + rc.B * jacobi(1, 0, 0) + rc.C * jacobi(0, 0, 0)


@given(st.integers(0, 6), st.fractions(-3, 3, max_denominator=4), st.fractions(-3, 3, max_denominator=4))
@settings(max_examples=40, deadline=None)
def test_jacobi_suite_property(n, a, b):
    assert classical_suite(ClassicalParams("Jacobi", a, b, n)).passed


@given(st.integers(0, 6), st.fractions(-3, 3, max_denominator=4))
@settings(max_examples=40, deadline=None)
def test_laguerre_suite_property(n, a):
    assert classical_suite(ClassicalParams("Laguerre", a, None, n)).passed


def test_genfun_examples():
    g = genfun_classical(ClassicalParams("Laguerre", 0), 3, 0)
    assert g.match and list(g.direct.coeffs) == [1, 1, 1, 1]
    g = genfun_classical(ClassicalParams("Jacobi", 0, 0), 3, 1)
    assert g.match and list(g.direct.coeffs) == [1, 1, 1, 1]
    assert genfun_classical(ClassicalParams("Laguerre", 1), 2, F(2, 7), "minus").match
    assert genfun_classical(ClassicalParams("Laguerre", F(1, 3)), 5, F(2, 7), "plus").match
    assert genfun_classical(ClassicalParams("Jacobi", F(3, 2), F(-5, 2)), 6, F(1, 3)).match


def test_limit_examples():
    rep = limit_JtoL_check(HALF, 0, 1, [100, 1000, 10000])
    assert rep.passed and rep.checks == {"exact": True}
    assert limit_JtoL_check(HALF, 1, 1, [100, 1000, 10000]).passed
    assert limit_JtoL_check(0, 2, F(1, 2), [100, 1000, 10000], sign=-1).passed
