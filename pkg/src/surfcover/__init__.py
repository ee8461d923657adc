"""Exact verification toolkit for bidouble covers of the blown-up plane over Q(i)."""

__version__ = "0.1.0"
