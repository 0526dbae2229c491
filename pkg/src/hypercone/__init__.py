"""Exact spectrahedral representations of hyperbolicity cones of elementary
symmetric polynomials and of derivative relaxations of the PSD cone."""

__version__ = "0.1.0"
