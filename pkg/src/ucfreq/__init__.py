"""Exact-arithmetic toolkit for frequency analysis of union-closed set families."""

__version__ = "0.1.0"
