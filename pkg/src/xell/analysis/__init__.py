"""Floating-point layer: quadrature, Gram-Schmidt, generating functions,
recurrences, zeros and limits."""
