"""Generalized Hofer norms on su(n), their Weyl-invariant polytopes, and geodesic certificates."""

__version__ = "0.1.0"
