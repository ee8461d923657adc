"""Plane-curve singularities, the Picard group of blow-ups, linear systems and cover invariants."""
