"""Exact weight vectors and weight polytopes of regular triangulations."""

__version__ = "0.1.0"
