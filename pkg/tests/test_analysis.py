import math
from fractions import Fraction as F

import mpmath
import numpy as np
import pytest
from scipy.special import roots_genlaguerre

from xell.analysis.genfun import double_genfun_check, genfun_x
from xell.analysis.gram import (coefficient_spread, gram_schmidt, gram_schmidt_check,
                                integration_formula_check, integration_pairs, norm_relation_check,
                                orthogonality_check)
from xell.analysis.limits import xl_limit_check
from xell.analysis.quadrature import (NonIntegrable, base_moment, gauss_jacobi, gauss_laguerre, inner_product,
                                      integrate_converged, moment_poly, quadrature_rule)
from xell.analysis.recurrence import recurrence_substitute_check
from xell.analysis.zeros import (ResidualTooLarge, RootSet, classify_extra, exact_domain_count,
                                 zeros, zeros_check)
from xell.classical import NonConvergence
from xell.exactnum import ETA, ONE, Poly
from xell.xcore import FAMILY_TABLES, ParamSet, base_P, xi, xpoly

SQRT_PI = math.sqrt(math.pi)
L1 = ParamSet("L1", 1, None, 1)


# quadrature


def test_jacobi_rule_matches_scipy_at_small_size():
    from scipy.special import roots_jacobi
    x, w = gauss_jacobi(30, 0.5, 2.5)
    xs, ws = roots_jacobi(30, 0.5, 2.5)
    assert np.allclose(x, xs, rtol=0, atol=1e-14) and np.allclose(w, ws, rtol=1e-11, atol=0)


def test_laguerre_rule_matches_scipy_at_small_size():
    x, w = gauss_laguerre(40, 1.5)
    xs, ws = roots_genlaguerre(40, 1.5)
    assert np.allclose(x, xs, rtol=1e-13) and np.allclose(w, ws, rtol=1e-11, atol=0)


@pytest.mark.parametrize("lam", [(F(3, 2), F(0)), (F(1), F(0)), (F(9, 2), F(0))])
def test_laguerre_moments(lam):
    rule = quadrature_rule("L", lam, 200)
    for k in range(0, 101, 5):
        exact = float(base_moment("L", lam, k))
        assert rule.integrate((moment_poly("L", k),)) == pytest.approx(exact, rel=1e-12)


@pytest.mark.parametrize("lam", [(F(1), F(3)), (F(5, 2), F(1)), (F(3, 2), F(-1, 4))])
def test_jacobi_moments_to_full_degree(lam):
    rule = quadrature_rule("J", lam, 200)
    for k in list(range(0, 40)) + [100, 250, 399]:
        exact = float(base_moment("J", lam, k))
        assert rule.integrate((moment_poly("J", k),)) == pytest.approx(exact, rel=1e-12)


@pytest.mark.parametrize("lam", [(F(2), F(27)), (F(1, 2), F(25))])
def test_hdpt_moments_that_exist(lam):
    g, h = lam
    top = math.ceil(h - g) - 1
    for k in range(top + 1):
        p = moment_poly("hDPT", k)
        rule = quadrature_rule("hDPT", lam, 200, p.degree)
        assert rule.integrate((p,)) == pytest.approx(float(base_moment("hDPT", lam, k)), rel=1e-12)
    with pytest.raises(NonIntegrable):
        quadrature_rule("hDPT", lam, 200, top + 1)


def test_base_moment_independent_gamma():
    # L weight e^-x x^a / 2 and J weight 2^-(a+b+1)... checked against mpmath quad
    lam = (F(1), F(3))
    f = lambda x: 2 ** -5.0 * (1 - x) ** 0.5 * (1 + x) ** 2.5 * (1 + x) ** 3
    assert float(base_moment("J", lam, 3)) == pytest.approx(float(mpmath.quad(f, [-1, 1])), rel=1e-12)


def test_inner_product_examples():
    p0 = ParamSet("L1", 1, None, 0)
    assert inner_product(p0, ONE, ONE) == pytest.approx(SQRT_PI / 4, rel=1e-12)
    P0, P1 = xpoly(L1, 0).poly, xpoly(L1, 1).poly
    h0, h1 = inner_product(L1, P0, P0), inner_product(L1, P1, P1)
    assert abs(inner_product(L1, P0, P1)) <= 1e-9 * math.sqrt(h0 * h1)
    assert h1 == pytest.approx(21 * SQRT_PI / 16, rel=1e-12)


def test_convergence_gate_raises():
    # a pole just outside the interval needs far more than 16 nodes
    near = ETA - F(1001, 1000)
    with pytest.raises(NonConvergence):
        integrate_converged("J", (F(1), F(3)), (ONE,), (near, near), npts=4, rtol=1e-9)
    value, nodes = integrate_converged("J", (F(1), F(3)), (ETA ** 3 + 1,), (), npts=4)
    f = lambda x: 2 ** -5.0 * (1 - x) ** 0.5 * (1 + x) ** 2.5 * (x ** 3 + 1)
    assert nodes == 8 and value == pytest.approx(float(mpmath.quad(f, [-1, 1])), rel=1e-12)


def test_orthogonality_and_norms():
    for p in (L1, ParamSet("J2", 1, 3, 2), ParamSet("hDPT", 1, 27, 2)):
        rep = orthogonality_check(p, 5)
        assert rep.passed, rep.extra


# integration formula


def test_integration_formula_constant():
    rep = integration_formula_check(L1, ONE, ONE)
    assert rep.passed and rep.checks["pointwise-lemma"]


def test_integration_formula_orthogonal_pair_vanishes():
    t = FAMILY_TABLES["J2"]
    p = ParamSet("J2", 1, 3, 1)
    lp = t.lam_prime(p.lam, 1)
    rep = integration_formula_check(p, base_P("J2", lp, 1), base_P("J2", lp, 3))
    assert rep.passed
    assert abs(rep.extra["lhs"]) < 1e-9 and abs(rep.extra["rhs"]) < 1e-9


def test_integration_pairs_count():
    assert len(integration_pairs(L1)) == 10


@pytest.mark.parametrize("n", range(5))
def test_norm_relation(n):
    assert norm_relation_check(ParamSet("J1", F(5, 2), 1, 2), n).passed


def test_norm_relation_skips_at_gamma_pole():
    # h_0 at alpha' = -1 is Gamma(0)
    assert norm_relation_check(ParamSet("L1", F(1, 2), None, 0), 0).skipped
    assert norm_relation_check(ParamSet("L1", F(1, 2), None, 0), 1).passed


# Gram-Schmidt


def test_gram_schmidt_examples():
    gs = gram_schmidt(L1, 2)
    assert all(x.poly is None and x.provenance == "gram-schmidt" for x in gs)
    assert max(coefficient_spread(gs[0].numeric, xi(L1, 1))) < 1e-10
    assert max(coefficient_spread(gs[1].numeric, -ETA ** 2 + F(21, 4))) < 1e-10
    j2 = ParamSet("J2", 1, 3, 1)
    gs = gram_schmidt(j2, 2)
    assert max(coefficient_spread(gs[2].numeric, xpoly(j2, 2).poly)) < 1e-8


def test_coefficient_spread_detects_non_proportional():
    spread, stray = coefficient_spread((1.0, 2.0, 3.0), Poly([1, 2, 3]))
    assert spread == 0 and stray == 0
    spread, _ = coefficient_spread((1.0, 2.0, 3.1), Poly([1, 2, 3]))
    assert spread > 1e-3
    _, stray = coefficient_spread((1.0, 0.5, 3.0), Poly([1, 0, 3]))
    assert stray > 0.1


def test_gram_schmidt_check_hdpt():
    assert gram_schmidt_check(ParamSet("hDPT", F(5, 2), 30, 2), 4).passed


# generating functions


def test_genfun_examples():
    assert genfun_x(L1, 6, F(1, 2)).passed
    assert genfun_x(ParamSet("J2", 1, 3, 1), 5, F(1, 3)).passed
    for fam, h in (("L1", None), ("L2", None), ("J1", F(1, 2)), ("J2", 3), ("hDPT", 27)):
        assert genfun_x(ParamSet(fam, 1, h, 0), 6, F(2, 5)).passed


def test_hdpt_genfun_as_printed_fails():
    p = ParamSet("hDPT", 1, 27, 1)
    assert genfun_x(p, 6, F(1, 3)).passed
    assert not genfun_x(p, 6, F(1, 3), as_printed=True).passed


@pytest.mark.parametrize("fam,s,t,eta", [("L2", 2, 4, F(1, 2)), ("L1", 2, 3, F(1, 3)),
                                         ("L1", 2, 4, F(1, 2))])
def test_double_genfun_examples(fam, s, t, eta):
    assert double_genfun_check(fam, 1, s, t, eta).passed


# recurrence substitute


@pytest.mark.parametrize("params,n", [(L1, 1), (ParamSet("J1", 3, 1, 2), 2),
                                      (ParamSet("L2", 1, None, 0), 2), (ParamSet("hDPT", 1, 27, 1), 0)])
def test_recurrence_examples(params, n):
    assert recurrence_substitute_check(params, n).passed


# zeros


def test_zeros_L1_example():
    rs = zeros(L1, 1)
    r = math.sqrt(21) / 2
    assert isinstance(rs, RootSet) and rs.domain_count == 1
    assert [float(z.real) for z in rs.roots] == pytest.approx([-r, r], abs=1e-10)
    assert rs.extra_classification == "all-negative-real" and rs.classification_ok


def test_zeros_n0_are_xi_roots_outside_domain():
    p = ParamSet("J2", 1, 3, 3)
    rs = zeros(p, 0)
    assert rs.domain_count == 0 and len(rs.roots) == 3
    vals = [abs(complex(mpmath.polyval([mpmath.mpf(c.numerator) / c.denominator
                                        for c in reversed(xi(p, 1).coeffs)], z))) for z in rs.roots]
    assert max(vals) < 1e-10


def test_zeros_J2_example():
    rs = zeros(ParamSet("J2", 1, 3, 2), 1)
    assert rs.domain_count == 1
    assert rs.extra_classification == "conjugate-pairs-only"
    assert all(z.real > 0 for z in rs.extra_roots) and rs.classification_ok


def test_zeros_against_numpy():
    p = ParamSet("L2", F(5, 2), None, 3)
    P = xpoly(p, 4).poly
    ref = np.sort_complex(np.roots([float(c) for c in reversed(P.coeffs)]))
    got = np.sort_complex(np.array([complex(z) for z in zeros(p, 4).roots]))
    assert np.allclose(got, ref, rtol=1e-8)


def test_rootset_json_digits():
    js = zeros(L1, 1).to_json()
    re = js["roots"][1]["re"]
    assert re.startswith("2.29128784747791991449") and len(re.replace(".", "")) == 25


def test_domain_count_exact():
    for p in (L1, ParamSet("J1", F(5, 2), 1, 3), ParamSet("hDPT", F(1, 2), 25, 3)):
        for n in range(5):
            assert exact_domain_count(p, n) == n


def test_classification_mismatch_is_reported():
    label, ok = classify_extra("L1", 2, [mpmath.mpc(-1, 1), mpmath.mpc(-1, -1)], [])
    assert label == "conjugate-pairs-only" and ok is False


def test_residual_guard(monkeypatch):
    import xell.analysis.zeros as zmod
    monkeypatch.setattr(zmod, "RESIDUAL_TOL", 0.0)
    with pytest.raises(ResidualTooLarge):
        zmod.zeros(ParamSet("J2", F(1, 2), F(5, 2), 3), 4)


def test_zeros_check_report():
    rep = zeros_check(ParamSet("J1", F(5, 2), 1, 3), 2)
    assert rep.passed and rep.extra["classification_ok"]


# limits


@pytest.mark.parametrize("fam", ["J1", "J2"])
def test_xl_limit(fam):
    for ell in range(3):
        for n in range(4):
            assert xl_limit_check(fam, 1, ell, n, F(1, 2), [10, 100, 1000, 10000]).passed
