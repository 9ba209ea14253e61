"""Borel orbits of square-zero upper triangular matrices and a checker for
the rank conditions on polynomial matrices."""

__version__ = "0.1.0"
