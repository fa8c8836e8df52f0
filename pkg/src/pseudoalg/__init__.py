"""Exact computation with finite pseudoalgebras over U(h)."""

__version__ = "0.1.0"
