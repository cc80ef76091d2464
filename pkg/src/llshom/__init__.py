"""Solvers, reductions and instance generators for list locally surjective
homomorphism problems."""

__version__ = "0.1.0"
