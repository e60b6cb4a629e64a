"""Exact construction and verification of exceptional (X_l) Laguerre and
Jacobi orthogonal polynomials."""

__version__ = "0.1.0"
