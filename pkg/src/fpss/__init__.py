"""Exact page-by-page verification of F_p spectral sequence computations."""

__version__ = "0.1.0"
