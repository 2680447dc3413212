"""Octonionic analysis on the unit ball of R^8: algebra, Cauchy-Riemann
operators, Szego/Bergman kernels, and quadrature-based verification."""

__version__ = "0.1.0"
