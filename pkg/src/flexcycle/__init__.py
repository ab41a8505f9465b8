"""Exact zero-sum cycle certificates for flexible triangular polyhedra."""

__version__ = "0.1.0"
