"""Exact Frobenius statistics for families of curves over F_q."""

__version__ = "0.1.0"
