"""Hyperelliptic curves with split Jacobians from odd-degree isogenies."""

__version__ = "0.1.0"
