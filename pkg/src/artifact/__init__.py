"""Exact computations for graded matrix factorizations of weighted homogeneous surface singularities."""

__version__ = "0.1.0"
