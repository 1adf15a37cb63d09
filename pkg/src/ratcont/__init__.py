"""Exact computations with continuous rational functions on real and p-adic varieties."""

__version__ = "0.1.0"
