"""Exact construction and verification of Shen-Larsson modules over torus Lie algebras."""

__version__ = "0.1.0"
