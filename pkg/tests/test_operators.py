from fractions import Fraction as F

import numpy as np
import pytest

from xell.exactnum import ETA, ONE, RationalFunction
from xell.operators import (backward_apply, backward_op, eigen_check, forward_apply, forward_op,
                            forward_backward_shift_check, htilde_apply, htilde_op, invariance_check,
                            invariant_basis, rodrigues, rodrigues_check, shape_invariance_check,
                            singularity_check)
from xell.xcore import FAMILY_TABLES, ParamSet, xi, xpoly

L1 = ParamSet("L1", 1, None, 1)


def P(params, n):
    return xpoly(params, n).poly


def test_forward_examples():
    assert forward_apply(L1, xi(L1, 1)).as_poly.is_zero()
    p0 = ParamSet("L1", F(3, 2), None, 0)
    q = ETA ** 3 - 2 * ETA + 5
    assert forward_apply(p0, q).as_poly == 2 * q.derive()
    # by hand: xi+ p' - xi+' p = -(eta + 3/2)(eta + 7/2) for p = -eta^2 + 21/4,
    # so F P_{1,1} = -2 (eta + 7/2) = f_1 P_{1,0}(eta; lambda + delta)
    assert forward_apply(L1, P(L1, 1)).as_poly == -2 * (ETA + F(7, 2))
    assert xpoly(L1.shifted(1), 0).poly == ETA + F(7, 2)


def test_backward_examples():
    g = F(5, 3)
    p0 = ParamSet("L1", g, None, 0)
    assert backward_apply(p0, ONE).as_poly == -2 * (g + F(1, 2) - ETA)
    assert backward_apply(L1, P(L1.shifted(1), 0)).as_poly == -2 * P(L1, 1)
    assert backward_apply(L1, P(L1.shifted(1), 0)).as_poly == 2 * ETA ** 2 - F(21, 2)


def test_htilde_examples():
    for n in range(4):
        lam_l = FAMILY_TABLES["L1"].delta
        E = FAMILY_TABLES["L1"].E(n, (L1.g + lam_l[0], F(0)))
        assert htilde_apply(L1, P(L1, n)).as_poly == E * P(L1, n)
    g = F(7, 4)
    p0 = ParamSet("L1", g, None, 0)
    assert htilde_apply(p0, ETA).as_poly == 4 * ETA - 4 * g - 2
    assert htilde_apply(p0, P(p0, 1)).as_poly == 4 * P(p0, 1)
    assert htilde_apply(L1, xi(L1, 1)).as_poly.is_zero()


def test_operator_factorisation():
    for params in (L1, ParamSet("J2", 1, 3, 2), ParamSet("hDPT", 1, 27, 2)):
        assert backward_op(params) @ forward_op(params) == htilde_op(params)


def test_raw_monomial_leaves_polynomials():
    assert htilde_op(L1).apply(ETA).as_poly() is None


@pytest.mark.parametrize("params,n", [(L1, 1), (ParamSet("J2", 1, 3, 2), 2),
                                      (ParamSet("L2", 1, None, 0), 3)])
def test_eigen_examples(params, n):
    assert eigen_check(params, n).passed


@pytest.mark.parametrize("params", [ParamSet("L1", 2, None, 0), L1, ParamSet("J1", 3, 1, 2)])
def test_shape_invariance_examples(params):
    assert shape_invariance_check(params).passed


def test_shape_invariance_energy_J1():
    t = FAMILY_TABLES["J1"]
    g, h = F(3), F(1)
    assert t.E(1, (g + 2, h + 2)) == 4 * (1 + g + h + 4)


@pytest.mark.parametrize("params,n", [(L1, 0), (ParamSet("L2", 1, None, 1), 1),
                                      (ParamSet("hDPT", 1, 6, 1), 1)])
def test_shift_examples(params, n):
    assert forward_backward_shift_check(params, n).passed


def test_shift_hdpt_forward_value():
    p = ParamSet("hDPT", 1, 6, 1)
    t = FAMILY_TABLES["hDPT"]
    f1 = t.f(1, (p.g + 1, p.h - 1))
    assert f1 == 2 * (1 + 2 - 5)
    assert forward_apply(p, P(p, 1)).as_poly == f1 * xpoly(p.shifted(1), 0).poly


@pytest.mark.parametrize("params,n", [(L1, 0), (L1, 2), (ParamSet("J2", 1, 3, 1), 1)])
def test_rodrigues_examples(params, n):
    x = rodrigues(params, n)
    assert x.provenance == "rodrigues" and x.poly == P(params, n)
    assert rodrigues_check(params, n).passed


def test_invariant_basis_L1():
    p = ParamSet("L1", 1, None, 2)
    basis = invariant_basis(p, 4)
    for k, v in enumerate(basis.vectors):
        lower = k * ETA ** (k - 1) * xi(p) if k else 0 * ETA
        assert v == ETA ** k * xi(p, 1) - lower
    assert basis.vectors[0] == FAMILY_TABLES["L1"].d1(p.lam) * xi(p, 1)


def test_invariant_basis_J2_shifted():
    p = ParamSet("J2", 1, 3, 2)
    g = p.g
    basis = invariant_basis(p, 4, "shifted")
    for k, v in enumerate(basis.vectors):
        assert v == (ONE - ETA) ** k * ((g + F(1, 2)) * xi(p, 1) + k * xi(p))


@pytest.mark.parametrize("seed", ["monomial", "shifted"])
def test_invariance_example(seed):
    rep = invariance_check(L1, 3, seed)
    assert rep.passed and rep.checks["raw-monomial-not-invariant"]


def _residues(params):
    """Residue of a1/a2 at each zero of xi by num/den' (independent of the library check)."""
    H = htilde_op(params)
    B = H.coeffs[1] / H.coeffs[2]
    roots = np.roots([float(c) for c in reversed(xi(params).coeffs)])
    num = np.poly1d([float(c) for c in reversed(B.num.coeffs)])
    den = np.poly1d([float(c) for c in reversed(B.den.coeffs)])
    return [num(r) / den.deriv()(r) for r in roots]


def test_singularity_examples():
    rep = singularity_check(L1)
    assert rep.passed
    assert xi(L1) == ETA + F(3, 2)
    H = htilde_op(L1)
    B = H.coeffs[1] / H.coeffs[2]
    assert B.num(F(-3, 2)) / B.den.derive()(F(-3, 2)) == -2
    j1 = ParamSet("J1", 3, 1, 2)
    assert singularity_check(j1).passed
    res = _residues(j1)
    assert len(res) == 2 and np.allclose(res, -2, atol=1e-9)
    assert singularity_check(ParamSet("L1", 1, None, 0)).skipped


def test_rational_function_result_type():
    assert isinstance(forward_apply(L1, ETA).value, RationalFunction)
