"""Exact computations for double filtrations of free groups and their Johnson homomorphisms."""

__version__ = "0.1.0"
