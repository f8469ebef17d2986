"""Exact Hom-Lie structures on quadratic central extensions of Lie algebras."""

__version__ = "0.1.0"
