"""Exception hierarchy for every failure the toolkit raises on purpose.

Scenario runners catch ``SurfcoverError`` per check and record a FAIL entry;
anything else is a bug and propagates.
"""

from __future__ import annotations


class SurfcoverError(Exception):
    """Root of all toolkit errors."""


# ── exact field / linear algebra ────────────────────────────────────────────

class DivisionByZero(SurfcoverError, ZeroDivisionError):
    """Division by the zero element of Q(i)."""


# ── polynomials ─────────────────────────────────────────────────────────────

class ParseError(SurfcoverError, ValueError):
    """Polynomial text could not be parsed.

    ``position`` is the 0-based character offset of the offending token and
    ``expected`` a short description of what the grammar wanted there.
    """

    def __init__(self, message: str, position: int, expected: str) -> None:
        super().__init__(f"{message} at position {position} (expected {expected})")
        self.position = position
        self.expected = expected


class NotSquarefree(SurfcoverError, ValueError):
    """The polynomial has a repeated factor."""


class InternalLimit(SurfcoverError, RuntimeError):
    """An iteration cap was hit; the measure it guards did not decrease."""


# ── singularities ───────────────────────────────────────────────────────────

class NonSplitTangentCone(SurfcoverError):
    """A blow-up direction needed for resolution is not defined over Q(i)."""


class DirectionNotInTangentCone(SurfcoverError, ValueError):
    """Requested blow-up direction is not a root of the tangent cone."""


class DepthCapExceeded(SurfcoverError, RuntimeError):
    """Resolution did not reach normal crossings within ``depth_cap`` blow-ups."""


class PointNotOnCurve(SurfcoverError, ValueError):
    """A local computation was asked for at a point the curve misses."""


class CommonComponent(SurfcoverError, ValueError):
    """Curves expected to meet in finitely many points share a component."""


# ── divisor classes / linear systems / covers ──────────────────────────────

class ConfigMismatch(SurfcoverError, ValueError):
    """Two divisor classes live on different blow-up configurations."""


class NotEven(SurfcoverError, ValueError):
    """A class with an odd coefficient was asked to be halved."""


class EmptySystem(SurfcoverError, ValueError):
    """The linear system has no members."""


class CatalogInsufficient(SurfcoverError, RuntimeError):
    """Fixed-part unloading did not stabilise within its cap."""


class BranchContractViolated(SurfcoverError, ValueError):
    """Double-cover branch data violate a precondition (evenness, B², n)."""


class InconsistentDeclaration(SurfcoverError, ValueError):
    """Declared cover generators contradict the projection formula."""


# ── scenarios ───────────────────────────────────────────────────────────────

class DegenerateChoice(SurfcoverError, ValueError):
    """Seeded configuration fails a genericity check."""


class CertificateInconclusive(SurfcoverError, RuntimeError):
    """Transversality could not be certified after all coordinate changes."""


class FixtureError(SurfcoverError, FileNotFoundError):
    """A scenario fixture file is missing or malformed."""
