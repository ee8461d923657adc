"""Exact arithmetic over Q(i): field, matrices, polynomials, resultants, local intersections."""
