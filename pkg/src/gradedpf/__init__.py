"""Exact computations with graded quiver algebras and their pseudo-Frobenius structure."""

__version__ = "0.1.0"
