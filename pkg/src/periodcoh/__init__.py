"""Exact combinatorics for the cohomology of p-adic period domains."""

__version__ = "0.1.0"
