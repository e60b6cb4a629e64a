"""Gram matrices, the integration formula and Gram-Schmidt construction."""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..exactnum import ETA, ONE, Poly
from ..gammaprod import GammaPole
from ..identities import IdentityCase, check_identity
from ..report import VerificationReport
from ..xcore import (FAMILY_TABLES, ParamSet, XPolynomial, base_P, lam_add, norm, norm_relation,
                     xi_map, xpoly)
from .quadrature import DEFAULT_NODES, NonIntegrable, base_inner_product, inner_product

PROPORTIONALITY_RTOL = 1e-8
ORTHOGONALITY_RTOL = 1e-6


class LossOfOrthogonality(ArithmeticError):
    pass


def _report(suite: str, params: ParamSet, n=None) -> VerificationReport:
    return VerificationReport(suite=suite, family=params.family, params=params.label(),
                              ell=params.ell, n=n)


def gram_matrix(params: ParamSet, polys, npts: int = DEFAULT_NODES) -> np.ndarray:
    k = len(polys)
    G = np.zeros((k, k))
    for i in range(k):
        for j in range(i, k):
            G[i, j] = G[j, i] = inner_product(params, polys[i], polys[j], npts)
    return G


def orthogonality_check(params: ParamSet, nmax: int, rtol: float = 1e-8,
                        npts: int = DEFAULT_NODES) -> VerificationReport:
    """Gram matrix of P_{l,0..nmax} against the closed-form norms."""
    rep = _report("orthogonality", params)
    ns = list(range(nmax + 1))
    if params.family == "hDPT":
        ns = [n for n in ns if n <= params.n_B - params.ell]
    polys = [xpoly(params, n).poly for n in ns]
    G = gram_matrix(params, polys, npts)
    worst_off = 0.0
    worst_diag = 0.0
    for i, n in enumerate(ns):
        h = norm(params, n).float_value
        worst_diag = max(worst_diag, abs(G[i, i] - h) / abs(h))
        for j in range(i):
            worst_off = max(worst_off, abs(G[i, j]) / math.sqrt(G[i, i] * G[j, j]))
    rep.check("diagonal", worst_diag <= rtol, worst_diag)
    rep.check("off-diagonal", worst_off <= rtol, worst_off)
    rep.extra.update(worst_diag=worst_diag, worst_off=worst_off, nodes=npts, n_max=ns[-1])
    return rep


# ---------------------------------------------------------------------------
# integration formula


def integration_pairs(params: ParamSet, count: int = 10) -> list:
    """Deterministic (p, q) test pairs: base polynomials at lambda' and monomials."""
    t = FAMILY_TABLES[params.family]
    lp = t.lam_prime(params.lam, params.ell)
    base = [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2)]
    pairs = [(base_P(params.family, lp, n), base_P(params.family, lp, m)) for n, m in base]
    mono = [(0, 1), (1, 2), (2, 2), (0, 3), (3, 1)]
    pairs += [(ETA ** i, ETA ** j) for i, j in mono]
    return pairs[:count]


def integration_formula_check(params: ParamSet, p: Poly, q: Poly, rtol: float = 1e-8,
                              npts: int = DEFAULT_NODES) -> VerificationReport:
    """<Xi[p], Xi[q]>_{l,lambda} = d1 d3 (p, q)_{lambda'} + cF^2/4 (p', q')_{lambda'+delta}."""
    rep = _report("integration", params)
    t = FAMILY_TABLES[params.family]
    lam, ell = params.lam, params.ell
    lp = t.lam_prime(lam, ell)
    Xp, Xq = xi_map(params, p), xi_map(params, q)
    lhs = inner_product(params, Xp, Xq, npts)
    try:
        first = base_inner_product(params.kind, lp, p, q, npts)
        second = 0.0
        if p.degree >= 1 and q.degree >= 1:
            second = base_inner_product(params.kind, lam_add(lp, t.delta), p.derive(), q.derive(), npts)
    except NonIntegrable as exc:
        return rep.skip(f"weight at lambda' not integrable: {exc}")
    rhs = float(t.d1(lam) * t.d3(lam_add(lam, t.delta, ell), ell)) * first \
        + float(t.cF) ** 2 / 4 * second
    scale = math.sqrt(abs(inner_product(params, Xp, Xp, npts) * inner_product(params, Xq, Xq, npts)))
    err = abs(lhs - rhs) / scale
    rep.check("quadrature", err <= rtol, err)
    rep.extra.update(lhs=lhs, rhs=rhs, rel_err=err, deg_p=p.degree, deg_q=q.degree)
    lemma = check_identity(IdentityCase("appCLemma", params))
    rep.check("pointwise-lemma", lemma.passed, lemma.residuals.get("appCLemma"))
    return rep


def norm_relation_check(params: ParamSet, n: int) -> VerificationReport:
    """d0^2 h_{l,n} = d1 d3 h_n(lambda') + f_n(lambda')^2 h_{n-1}(lambda'+delta)/4, exactly."""
    rep = _report("integration", params, n)
    try:
        lhs, rhs = norm_relation(params, n)
    except GammaPole as exc:
        return rep.skip(f"Gamma pole in the classical norm at lambda': {exc}")
    rep.check("gamma-symbolic", lhs == rhs, repr(lhs) + " != " + repr(rhs))
    return rep


# ---------------------------------------------------------------------------
# Gram-Schmidt


SEEDS = {"L1": ETA, "L2": ETA, "J1": ONE + ETA, "J2": ONE - ETA, "hDPT": ETA - ONE}


def gram_schmidt(params: ParamSet, nmax: int, npts: int = DEFAULT_NODES) -> list:
    """Orthonormalise Xi_{l,lambda}[p_k], k <= nmax, under <.,.>_{l,lambda}.

    Classical Gram-Schmidt applied twice (re-orthogonalisation); output
    coefficients are floats, stored in the ``numeric`` field.
    """
    params.require_range()
    if params.family == "hDPT" and nmax > params.n_B - params.ell:
        raise ValueError("nmax exceeds the square-integrable range n_B - l")
    seed = SEEDS[params.family]
    vecs = [xi_map(params, seed ** k) for k in range(nmax + 1)]
    out = []
    basis: list[Poly] = []
    for k, v in enumerate(vecs):
        u = v
        for _ in range(2):
            for b in basis:
                c = inner_product(params, u, b, npts)
                u = u - b * _exact(c)
        nrm = math.sqrt(inner_product(params, u, u, npts))
        u = u * _exact(1 / nrm)
        basis.append(u)
        out.append(XPolynomial(params, k, None, "gram-schmidt",
                               tuple(float(c) for c in u.coeffs)))
    # orthonormality of the output
    for i in range(len(basis)):
        for j in range(i):
            off = abs(inner_product(params, basis[i], basis[j], npts))
            if off > ORTHOGONALITY_RTOL:
                raise LossOfOrthogonality(f"<u_{i}, u_{j}> = {off:.3e}")
    return out


def _exact(x: float) -> Fraction:
    return Fraction(float(x))


def coefficient_spread(numeric, exact: Poly) -> tuple[float, float]:
    """(relative spread of numeric/exact ratios, largest stray coefficient).

    Ratios are taken where the exact coefficient is nonzero; where it is
    zero the numeric coefficient must be small relative to the largest.
    """
    num = np.array(numeric, dtype=float)
    ex = np.array(exact.to_floats(), dtype=float)
    m = max(len(num), len(ex))
    num = np.pad(num, (0, m - len(num)))
    ex = np.pad(ex, (0, m - len(ex)))
    mask = ex != 0
    ratios = num[mask] / ex[mask]
    mean = np.mean(ratios)
    spread = float((np.max(ratios) - np.min(ratios)) / abs(mean))
    scale = np.max(np.abs(num))
    stray = float(np.max(np.abs(num[~mask])) / scale) if (~mask).any() else 0.0
    return spread, stray


def gram_schmidt_check(params: ParamSet, nmax: int, rtol: float = PROPORTIONALITY_RTOL,
                       npts: int = DEFAULT_NODES) -> VerificationReport:
    rep = _report("gramschmidt", params)
    gs = gram_schmidt(params, nmax, npts)
    worst = 0.0
    for x in gs:
        spread, stray = coefficient_spread(x.numeric, xpoly(params, x.n).poly)
        rep.check(f"proportional{x.n}", spread <= rtol and stray <= rtol, max(spread, stray))
        worst = max(worst, spread, stray)
    rep.extra["worst_spread"] = worst
    return rep


__all__ = ["gram_matrix", "orthogonality_check", "integration_formula_check", "integration_pairs",
           "norm_relation_check", "gram_schmidt", "gram_schmidt_check", "coefficient_spread",
           "LossOfOrthogonality", "SEEDS"]
