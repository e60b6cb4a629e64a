"""Zeros of the X_l polynomials and the classification of the extra ones.

Roots come from Aberth-Ehrlich iteration in double precision, refined by
Newton steps in mpmath on the exact coefficients.  The number of real roots
and the number inside the orthogonality domain are fixed exactly by Sturm
sequences, so the numeric stage only has to locate them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath
import numpy as np

from ..exactnum import Poly, sturm_count
from ..report import VerificationReport
from ..xcore import DOMAINS, ParamSet, xpoly

RESIDUAL_TOL = 1e-10
WORK_DPS = 40


class ResidualTooLarge(ArithmeticError):
    pass


@dataclass
class RootSet:
    roots: list
    domain_count: int
    extra_classification: str
    extra_roots: list = field(default_factory=list)
    domain_roots: list = field(default_factory=list)
    classification_ok: bool | None = None
    max_residual: float = 0.0

    def to_json(self) -> dict:
        def enc(z):
            return {"re": mpmath.nstr(z.real, 25), "im": mpmath.nstr(z.imag, 25)}
        return {"roots": [enc(z) for z in self.roots], "domain_count": self.domain_count,
                "extra_classification": self.extra_classification,
                "classification_ok": self.classification_ok,
                "max_residual": self.max_residual}


def aberth(coeffs: np.ndarray, tol: float = 1e-14, maxiter: int = 500, seed: int = 0) -> np.ndarray:
    """All roots of sum coeffs[k] x^k by Aberth-Ehrlich iteration."""
    c = np.asarray(coeffs, dtype=complex)
    d = len(c) - 1
    if d < 1:
        return np.array([], dtype=complex)
    p = np.polynomial.Polynomial(c)
    dp = p.deriv()
    radius = 1 + np.max(np.abs(c[:-1] / c[-1]))
    rng = np.random.default_rng(seed)
    angles = 2 * np.pi * (np.arange(d) + 0.25 + 0.1 * rng.random(d)) / d
    z = radius * np.exp(1j * angles)
    for _ in range(maxiter):
        ratio = p(z) / dp(z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1)
        inv = 1 / diff
        np.fill_diagonal(inv, 0)
        w = ratio / (1 - ratio * inv.sum(axis=1))
        z = z - w
        if np.all(np.abs(w) <= tol * (1 + np.abs(z))):
            break
    return z


def refine(p: Poly, z0, dps: int = WORK_DPS, steps: int = 50):
    with mpmath.workdps(dps):
        cs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(p.coeffs)]
        dcs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(p.derive().coeffs)]
        z = mpmath.mpc(complex(z0))
        for _ in range(steps):
            step = mpmath.polyval(cs, z) / mpmath.polyval(dcs, z)
            z -= step
            if abs(step) <= mpmath.mpf(10) ** (-dps + 5) * (1 + abs(z)):
                break
        return +z


def find_roots(p: Poly) -> tuple[list, float]:
    """Refined roots with the exact number of real ones made real."""
    coeffs = np.array(p.to_floats())
    z = aberth(coeffs / np.max(np.abs(coeffs)))
    roots = [refine(p, zi) for zi in z]
    n_real = sturm_count(p, -math.inf, math.inf)
    order = sorted(range(len(roots)), key=lambda i: abs(roots[i].imag))
    for i in order[:n_real]:
        roots[i] = mpmath.mpc(roots[i].real, 0)
    scale = max(abs(float(c)) for c in p.coeffs)
    with mpmath.workdps(WORK_DPS):
        cs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(p.coeffs)]
        resid = max((float(abs(mpmath.polyval(cs, r))) for r in roots), default=0.0) / scale
    # roots are conjugate-closed; sort by (real part, imaginary part)
    roots.sort(key=lambda r: (float(r.real), float(r.imag)))
    return roots, resid


def _in_domain(z, kind: str) -> bool:
    if z.imag != 0:
        return False
    lo, hi = DOMAINS[kind]
    return float(lo) < float(z.real) < (hi if hi == math.inf else float(hi))


def classify_extra(family: str, ell: int, extra: list, domain_roots: list) -> tuple[str, bool | None]:
    """Pattern of the l extra zeros and whether it matches the stated one.

    "Left of" and "right of" compare real parts.
    """
    real = [z for z in extra if z.imag == 0]
    cplx = [z for z in extra if z.imag != 0]
    pairs = len(cplx) // 2
    if len(real) == len(extra):
        label = "all-negative-real" if all(z.real < 0 for z in real) else "all-real"
    elif not real:
        label = "conjugate-pairs-only"
    else:
        label = f"{len(real)}-real-plus-{pairs}-conjugate-pairs"
    if ell == 0:
        return "none", True
    if family == "L1":
        return label, len(real) == ell and all(z.real < 0 for z in real)
    if family == "hDPT":
        return label, None
    odd = ell % 2 == 1
    want_real = 1 if odd else 0
    ok = len(real) == want_real and pairs == ell // 2
    if family == "L2":
        if odd and ok:
            ok = real[0].real < 0 and all(real[0].real < z.real for z in cplx)
        if ok and domain_roots:
            ok = all(z.real < min(w.real for w in domain_roots) for z in extra)
        return label, ok
    if family == "J1":
        if ok:
            ok = all(z.real < 0 for z in cplx)
            if odd:
                ok = ok and real[0].real < 0 and all(real[0].real < z.real for z in cplx)
        return label, ok
    if ok:
        ok = all(z.real > 0 for z in cplx)
        if odd:
            ok = ok and real[0].real > 0 and all(real[0].real > z.real for z in cplx)
    return label, ok


def zeros(params: ParamSet, n: int) -> RootSet:
    p = xpoly(params, n).poly
    roots, resid = find_roots(p)
    if resid > RESIDUAL_TOL:
        raise ResidualTooLarge(f"scaled residual {resid:.2e} for {params} n={n}")
    kind = params.kind
    dom = [z for z in roots if _in_domain(z, kind)]
    extra = [z for z in roots if not _in_domain(z, kind)]
    label, ok = classify_extra(params.family, params.ell, extra, dom)
    return RootSet(roots, len(dom), label, extra, dom, ok, resid)


def exact_domain_count(params: ParamSet, n: int) -> int:
    lo, hi = DOMAINS[params.kind]
    p = xpoly(params, n).poly
    # Sturm counts (lo, hi]; a root at hi would sit on the boundary
    return sturm_count(p, lo, hi) - (1 if hi != math.inf and p(hi) == 0 else 0)


def zeros_check(params: ParamSet, n: int) -> VerificationReport:
    rep = VerificationReport(suite="zeros", family=params.family, params=params.label(),
                             ell=params.ell, n=n)
    rs = zeros(params, n)
    rep.check("domain-count", rs.domain_count == n, rs.domain_count)
    rep.check("domain-count-exact", exact_domain_count(params, n) == n)
    rep.check("residual", rs.max_residual <= RESIDUAL_TOL, rs.max_residual)
    conj = sorted((float(z.real), abs(float(z.imag))) for z in rs.roots if z.imag != 0)
    rep.check("conjugate-closed", all(abs(conj[i][0] - conj[i + 1][0]) < 1e-12 * (1 + abs(conj[i][0]))
                                      for i in range(0, len(conj), 2)))
    rep.extra.update(classification=rs.extra_classification, classification_ok=rs.classification_ok)
    return rep


__all__ = ["RootSet", "zeros", "zeros_check", "find_roots", "aberth", "classify_extra",
           "exact_domain_count", "ResidualTooLarge"]
