"""One test per acceptance criterion; each prints a PASS/FAIL line."""
import math
import time
from contextlib import contextmanager
from fractions import Fraction as F

import pytest

from xell import operators as ops
from xell.analysis.genfun import double_genfun_check, genfun_x
from xell.analysis.gram import (gram_schmidt_check, integration_formula_check, integration_pairs,
                                norm_relation_check, orthogonality_check)
from xell.analysis.limits import xl_limit_check
from xell.analysis.quadrature import inner_product
from xell.analysis.recurrence import recurrence_substitute_check
from xell.analysis.zeros import zeros, zeros_check
from xell.classical import limit_JtoL_check
from xell.grid import GH, grid_ns, grid_params
from xell.identities import IDENTITIES, IdentityCase, check_identity, run_identity_suite
from xell.xcore import (FAMILIES, BoundStateExceeded, ParamSet, construction_check, xi, xpoly,
                        xpoly_original_J2)

pytestmark = pytest.mark.acceptance

FULL = list(grid_params())
DEFAULT = list(grid_params(ells=range(4)))


@contextmanager
def criterion(number: int, title: str, limit: float | None = None):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {number} FAIL  {title}  ({time.perf_counter() - start:.1f} s)")
        raise
    elapsed = time.perf_counter() - start
    ok = limit is None or elapsed < limit
    budget = f" limit {limit:.0f} s" if limit else ""
    print(f"ACCEPTANCE {number} {'PASS' if ok else 'FAIL'}  {title}  ({elapsed:.1f} s{budget})")
    assert ok, f"criterion {number} took {elapsed:.1f} s, limit {limit} s"


def failures(reports):
    reports = list(reports)
    assert reports, "no cases were run"
    return [str(r) + " " + repr(r.residuals) for r in reports if not r.passed]


def _per_family_choices(params):
    seen = {}
    for p in params:
        seen.setdefault(p.family, set()).add((p.g, p.h))
    return seen


def test_01_closed_form_construction():
    with criterion(1, "closed-form construction on the full grid", 10):
        assert all(len(v) >= 3 for v in _per_family_choices(FULL).values())
        assert set(p.family for p in FULL) == set(FAMILIES)
        reps = [construction_check(p, n) for p in FULL for n in grid_ns(p)]
        assert not failures(reps)
        assert all(xpoly(p, 0).poly == xi(p, 1) for p in FULL)


def test_02_differential_equations():
    with criterion(2, "differential equations, exact residuals, full grid", 30):
        assert not failures(ops.eigen_check(p, n) for p in FULL for n in grid_ns(p))


def test_03_shape_invariance():
    with criterion(3, "shape invariance, coefficients and action on Xi[eta^k], k <= 4", 60):
        reps = [ops.shape_invariance_check(p, 4) for p in FULL]
        assert not failures(reps)


def test_04_rodrigues_equals_closed_form():
    with criterion(4, "Rodrigues formula equals closed form, full grid"):
        for p in FULL:
            for n in grid_ns(p):
                assert ops.rodrigues(p, n).poly == xpoly(p, n).poly, (p, n)


def test_05_identity_suites():
    with criterion(5, "identity suites on the default grid", 60):
        reps = run_identity_suite(DEFAULT, nmax=4)
        assert not failures(reps)
        ran = {r.detail for r in reps if not r.skipped}
        assert set(IDENTITIES) <= ran, set(IDENTITIES) - ran
        assert sum(not r.skipped for r in reps) > 1000


def test_06_original_J2_form_equivalence():
    with criterion(6, "original J2 form equals the new form"):
        picks = GH["J2"]
        assert len(picks) >= 2
        for g, h in picks:
            for ell in (2, 3):
                for n in range(4):
                    p = ParamSet("J2", g, h, ell)
                    assert xpoly_original_J2(p, n).poly == xpoly(p, n).poly, (p, n)
            p = ParamSet("J2", g, h, 1)
            assert xpoly_original_J2(p, 0).poly == xpoly(p, 0).poly
            assert check_identity(IdentityCase("appendixA", p, 0)).passed


def test_07_orthogonality_and_norms():
    with criterion(7, "Gram matrix diagonal and norms, n,m <= 5, l <= 3", 60):
        reps = [orthogonality_check(p, 5, rtol=1e-8) for p in DEFAULT]
        assert not failures(reps)
        L1 = ParamSet("L1", 1, None, 1)
        P1 = xpoly(L1, 1).poly
        value = inner_product(L1, P1, P1)
        assert abs(value - 21 * math.sqrt(math.pi) / 16) <= 1e-8 * value


def test_08_integration_formula():
    with criterion(8, "integration formula, 10 pairs per family, and exact norm relation"):
        counted = {}
        for p in DEFAULT:
            for a, b in integration_pairs(p, 10):
                rep = integration_formula_check(p, a, b, rtol=1e-8)
                assert rep.passed, (str(rep), rep.residuals)
                if not rep.skipped:
                    counted[p.family] = counted.get(p.family, 0) + 1
            for n in grid_ns(p, range(5)):
                rep = norm_relation_check(p, n)
                assert rep.passed, (str(rep), rep.residuals)
        assert all(counted.get(f, 0) >= 10 for f in FAMILIES), counted


def test_09_gram_schmidt():
    with criterion(9, "Gram-Schmidt proportional to closed form, n <= 4, l <= 2"):
        reps = [gram_schmidt_check(p, 4, rtol=1e-8) for p in grid_params(ells=range(3))]
        assert not failures(reps)


def test_10_generating_functions():
    with criterion(10, "generating functions exact to order 6; double ones to (2, 4)", 60):
        reps = [genfun_x(p, 6, eta) for p in grid_params(ells=range(3))
                for eta in (F(1, 3), F(2, 5))]
        assert not failures(reps)
        for fam in ("L1", "L2"):
            for g, _ in GH[fam]:
                for eta in (F(1, 3), F(1, 2)):
                    assert double_genfun_check(fam, g, 2, 4, eta).passed


def test_11_recurrence_substitute():
    with criterion(11, "recurrence substitute, full grid, n <= 4"):
        reps = [recurrence_substitute_check(p, n) for p in FULL for n in grid_ns(p, range(5))]
        assert not failures(reps)
        assert not any(r.skipped for r in reps)


def test_12_zeros():
    with criterion(12, "zeros: domain count on the full grid, classification l <= 3, n <= 4"):
        reps = [zeros_check(p, n) for p in FULL for n in grid_ns(p)]
        assert not failures(reps)
        for r in reps:
            if r.family != "hDPT" and r.ell <= 3 and r.n <= 4:
                assert r.extra["classification_ok"] is True, str(r)
        rs = zeros(ParamSet("L1", 1, None, 1), 1)
        r21 = math.sqrt(21) / 2
        got = sorted(float(z.real) for z in rs.roots)
        assert abs(got[0] + r21) <= 1e-10 and abs(got[1] - r21) <= 1e-10
        assert all(z.imag == 0 for z in rs.roots)


def test_13_singularity_structure():
    with criterion(13, "singularity structure, l <= 4"):
        reps = [ops.singularity_check(p) for p in FULL if p.ell >= 1]
        assert not failures(reps)
        assert all(not r.skipped for r in reps)


def test_14_jacobi_to_laguerre_limit():
    with criterion(14, "Jacobi to Laguerre limits decay by [0.05, 0.2] per decade, n <= 3"):
        betas = [10, 100, 1000, 10000]
        for n in range(4):
            for alpha in (F(1, 2), F(3, 2), F(0)):
                for sign in (1, -1):
                    rep = limit_JtoL_check(alpha, n, F(1, 2), betas, sign)
                    assert rep.passed, (str(rep), rep.extra)
            for fam in ("J1", "J2"):
                for ell in range(3):
                    rep = xl_limit_check(fam, 1, ell, n, F(1, 2), betas)
                    assert rep.passed, (str(rep), rep.extra)


def test_15_hdpt_bound():
    with criterion(15, "hDPT bound n <= n_B - l enforced"):
        for g, h in GH["hDPT"]:
            nb = ParamSet("hDPT", g, h, 0).n_B
            for ell in range(nb):
                p = ParamSet("hDPT", g, h, ell)
                top = nb - ell
                assert xpoly(p, top).poly.degree == nb
                with pytest.raises(BoundStateExceeded):
                    xpoly(p, top + 1)
