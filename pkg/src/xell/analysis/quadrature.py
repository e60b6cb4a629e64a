"""Gauss rules for the classical weights and the deformed inner product.

Nodes and weights of the classical rules come from the three-term recurrence:
eigenvalues of the Jacobi matrix (scipy), Newton polish, Christoffel weights.  The deformed
weight W(eta; lambda + l delta)/xi^2 is handled by treating 1/xi^2 as part
of the integrand, which is smooth because xi has no zero on the domain.

On (1, inf) the substitution eta = 2/s - 1 maps the hyperbolic weight to a
Jacobi weight on (0, 1); a rational integrand of degree D at infinity
contributes s^(-D), which is folded into the Jacobi exponent so the
remaining integrand is a polynomial ratio regular at s = 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaln

from ..classical import NonConvergence
from ..exactnum import Poly
from ..xcore import FAMILY_TABLES, ParamSet, base_weight, lam_add, weight_factor, weight_two_power

DEFAULT_NODES = 200
CONVERGENCE_RTOL = 1e-9


class NonIntegrable(ValueError):
    """The weight times the integrand is not integrable on the domain."""


Factors = Poly | tuple


def exact_values(p: Poly, xs: np.ndarray) -> np.ndarray:
    """p at float nodes, evaluated exactly in integers and rounded once.

    Floats are dyadic rationals, so p(x) is computed without cancellation
    error; this matters where expanded coefficients nearly cancel.
    """
    lcm = 1
    for c in p.coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in p.coeffs]
    d = len(ints) - 1
    out = np.empty(len(xs))
    for i, x in enumerate(xs.tolist()):
        m, q = float(x).as_integer_ratio()
        acc = 0
        qk = 1
        for c in reversed(ints):
            acc = acc * m + c * qk
            qk *= q
        # acc = sum c_k m^k q^(d-k) and qk = q^(d+1)
        out[i] = Fraction(acc, lcm * (qk // q)) if d >= 0 else 0.0
    return out


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss rule for the classical weight W(eta; lam) of ``kind``.

    For kind 'hDPT' the rule is specific to integrands of degree ``power``
    at infinity: ``nodes`` are values of s, and polynomials are mapped by
    s_transform before evaluation.
    """

    kind: str
    lam: tuple
    npts: int
    nodes: np.ndarray
    weights: np.ndarray
    power: int = 0
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def poly_values(self, p: Poly) -> np.ndarray:
        v = self._cache.get(p)
        if v is None:
            v = exact_values(s_transform(p) if self.kind == "hDPT" else p, self.nodes)
            self._cache[p] = v
        return v

    def values(self, num: Factors, den: Factors = ()) -> np.ndarray:
        num = (num,) if isinstance(num, Poly) else tuple(num)
        den = (den,) if isinstance(den, Poly) else tuple(den)
        out = np.ones(len(self.nodes))
        for f in num:
            out = out * self.poly_values(f)
        for f in den:
            out = out / self.poly_values(f)
        return out

    def integrate(self, num: Factors, den: Factors = ()) -> float:
        """Integral of W(eta; lam) * prod(num) / prod(den) over the domain."""
        return float(np.dot(self.weights, self.values(num, den)))

    def abs_integrate(self, num: Factors, den: Factors = ()) -> float:
        return float(np.dot(np.abs(self.weights), np.abs(self.values(num, den))))


def s_transform(p: Poly) -> Poly:
    """s^deg(p) * p(2/s - 1), a polynomial in s."""
    d = p.degree
    out = Poly()
    two_minus_s = Poly((2, -1))
    s = Poly((0, 1))
    for k in range(d + 1):
        if p[k]:
            out = out + (two_minus_s ** k) * (s ** (d - k)) * p[k]
    return out


def _orthonormal(x: np.ndarray, alpha: np.ndarray, beta: np.ndarray):
    """p_n(x), p_n'(x) and log(sum_{k<n} p_k(x)^2) for the orthonormal family
    with recurrence beta[k+1] p_{k+1} = (x - alpha[k]) p_k - beta[k] p_{k-1};
    nodes are rescaled individually when the values grow large."""
    big = 1e100
    p_prev, p = np.zeros_like(x), np.ones_like(x)
    d_prev, d = np.zeros_like(x), np.zeros_like(x)
    total = np.zeros_like(x)
    log_scale = np.zeros_like(x)
    for k in range(len(alpha)):
        total += p * p
        p_new = ((x - alpha[k]) * p - beta[k] * p_prev) / beta[k + 1]
        d_new = (p + (x - alpha[k]) * d - beta[k] * d_prev) / beta[k + 1]
        p_prev, p, d_prev, d = p, p_new, d, d_new
        over = np.abs(p) > big
        if over.any():
            for arr in (p_prev, p, d_prev, d):
                arr[over] /= big
            total[over] /= big * big
            log_scale[over] += np.log(big)
    return p, d, np.log(total) + 2 * log_scale


def gauss_from_recurrence(alpha: np.ndarray, beta: np.ndarray, log_mu0: float):
    """Gauss rule from recurrence coefficients (beta[0] unused, len(beta) = n+1).

    Nodes start as eigenvalues of the Jacobi matrix and are polished by
    Newton steps; weights come from the Christoffel formula, which keeps
    full relative accuracy where eigenvector components only have absolute
    accuracy (tiny weights far out, weights next to a singular endpoint).
    """
    x = eigh_tridiagonal(alpha, beta[1:-1], eigvals_only=True)
    for _ in range(3):
        p, d, _ = _orthonormal(x, alpha, beta)
        x = x - p / d
    _, _, log_total = _orthonormal(x, alpha, beta)
    return x, np.exp(log_mu0 - log_total)


def gauss_laguerre(npts: int, a: float) -> tuple[np.ndarray, np.ndarray]:
    """Gauss rule for x^a e^(-x) on (0, inf).

    scipy's roots_genlaguerre overflows beyond a few hundred nodes.
    """
    k = np.arange(npts + 1, dtype=float)
    alpha = 2 * k[:-1] + a + 1
    beta = np.sqrt(k * (k + a))
    return gauss_from_recurrence(alpha, beta, gammaln(a + 1))


def gauss_jacobi(npts: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Gauss rule for (1-x)^a (1+x)^b on (-1, 1)."""
    k = np.arange(npts + 1, dtype=float)
    s = 2 * k + a + b
    alpha = np.empty(npts)
    alpha[0] = (b - a) / (a + b + 2)
    kk, ss = k[1:npts], s[1:npts]
    alpha[1:] = (b * b - a * a) / (ss * (ss + 2))
    beta = np.zeros(npts + 1)
    if npts >= 1:
        beta[1] = np.sqrt(4 * (1 + a) * (1 + b) / ((2 + a + b) ** 2 * (3 + a + b)))
    kk, ss = k[2:], s[2:]
    beta[2:] = np.sqrt(4 * kk * (kk + a) * (kk + b) * (kk + a + b)
                       / (ss * ss * (ss + 1) * (ss - 1)))
    log_mu0 = (a + b + 1) * math.log(2) + gammaln(a + 1) + gammaln(b + 1) - gammaln(a + b + 2)
    return gauss_from_recurrence(alpha, beta, log_mu0)


@lru_cache(maxsize=256)
def quadrature_rule(kind: str, lam: tuple, npts: int = DEFAULT_NODES, power: int = 0) -> QuadratureRule:
    a, b = base_weight(kind, lam)
    pf = 2.0 ** float(weight_two_power(kind, lam))
    if kind == "L":
        x, w = gauss_laguerre(npts, float(a))
        # weights that underflow to zero carry nothing but could meet an overflowing integrand
        keep = w > 0
        return QuadratureRule(kind, lam, npts, x[keep], 0.5 * w[keep])
    if kind == "J":
        x, w = gauss_jacobi(npts, float(a), float(b))
        return QuadratureRule(kind, lam, npts, x, pf * w)
    g, h = lam
    # W deta = (1/2)(1-s)^(g-1/2) s^(h-g-1) ds; the integrand adds s^(-power)
    e = h - g - 1 - power
    if e <= -1 or a <= -1:
        raise NonIntegrable(f"hyperbolic weight at {lam} against degree {power}")
    x, w = gauss_jacobi(npts, float(a), float(e))
    s = (x + 1) / 2
    w = w * 2.0 ** (-float(a) - float(e) - 1) / 2
    return QuadratureRule(kind, lam, npts, s, w, power)


def _degree(f: Factors) -> int:
    f = (f,) if isinstance(f, Poly) else tuple(f)
    return sum(p.degree for p in f)


def _is_zero(f: Factors) -> bool:
    f = (f,) if isinstance(f, Poly) else tuple(f)
    return any(p.is_zero() for p in f)


def integrate_converged(kind: str, lam: tuple, num: Factors, den: Factors = (),
                        npts: int = DEFAULT_NODES, rtol: float = CONVERGENCE_RTOL) -> tuple[float, int]:
    """Integral of W(eta; lam) num/den with a node-doubling gate.

    Accepts when two successive rules (npts, 2 npts, then 4 npts) agree to
    ``rtol`` relative to the integral of |num/den|; raises NonConvergence
    when the doubling fails twice.  Returns (value, nodes used).
    """
    if _is_zero(num):
        return 0.0, 0
    power = _degree(num) - _degree(den) if kind == "hDPT" else 0
    prev = None
    n = npts
    for _ in range(3):
        rule = quadrature_rule(kind, lam, n, power)
        val = rule.integrate(num, den)
        scale = rule.abs_integrate(num, den)
        if prev is not None and abs(val - prev) <= rtol * max(scale, 1e-300):
            return val, n
        prev = val
        n *= 2
    raise NonConvergence(f"quadrature did not converge for kind={kind} lam={lam}")


def inner_product(params: ParamSet, p: Poly, q: Poly, npts: int = DEFAULT_NODES,
                  rtol: float = CONVERGENCE_RTOL) -> float:
    """<p, q>_{l,lambda} = int p q W(eta; lambda + l delta) / xi_l(eta; lambda)^2."""
    wf = weight_factor(params)
    t = FAMILY_TABLES[params.family]
    lam_l = lam_add(params.lam, t.delta, params.ell)
    val, _ = integrate_converged(params.kind, lam_l, (p, q), (wf.divisor, wf.divisor), npts, rtol)
    return val


def base_inner_product(kind: str, lam: tuple, p: Poly, q: Poly, npts: int = DEFAULT_NODES,
                       rtol: float = CONVERGENCE_RTOL) -> float:
    """(p, q)_lam against the classical weight W(eta; lam)."""
    a, b = base_weight(kind, lam)
    if a <= -1 or (kind == "J" and b <= -1):
        raise NonIntegrable(f"classical weight at {lam} is not integrable")
    val, _ = integrate_converged(kind, lam, (p, q), (), npts, rtol)
    return val


def base_moment(kind: str, lam: tuple, k: int):
    """Exact-in-Gamma moment of the classical weight, evaluated with mpmath.

    L: int W eta^k; J: int W (1+eta)^k; hDPT: int W (eta+1)^k.
    """
    import mpmath
    a, b = base_weight(kind, lam)
    def mpq(x):
        return mpmath.mpf(x.numerator) / x.denominator

    with mpmath.workdps(40):
        pf = mpmath.mpf(2) ** mpq(weight_two_power(kind, lam))
        a = mpq(a)
        if kind == "L":
            return +(mpmath.gamma(a + k + 1) / 2)
        b = mpq(b)
        if kind == "J":
            return +(pf * mpmath.mpf(2) ** (a + b + k + 1) * mpmath.beta(a + 1, b + k + 1))
        # (eta-1)^a (eta+1)^(b+k) on (1, inf) is 2^(a+b+k+1) B(a+1, -a-b-k-1)
        return +(pf * mpmath.mpf(2) ** (a + b + k + 1) * mpmath.beta(a + 1, -a - b - k - 1))


def moment_poly(kind: str, k: int) -> Poly:
    base = {"L": Poly((0, 1)), "J": Poly((1, 1)), "hDPT": Poly((1, 1))}[kind]
    return base ** k


__all__ = ["QuadratureRule", "quadrature_rule", "integrate_converged", "inner_product",
           "base_inner_product", "base_moment", "moment_poly", "s_transform", "NonIntegrable",
           "DEFAULT_NODES", "gauss_laguerre", "gauss_jacobi", "gauss_from_recurrence"]
