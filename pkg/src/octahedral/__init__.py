"""Symmetric periodic orbit of the octahedral six-body problem by action minimization."""

__version__ = "0.1.0"
