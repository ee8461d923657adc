"""Check recording for scenario runs.

Each check is a callable returning ``(ok, values)``.  A ``SurfcoverError``
raised inside becomes a FAIL entry carrying the message; anything else is a
bug and propagates.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Any, Callable

from surfcover.algebra.exactfield import GaussianRational
from surfcover.algebra.intersection import Infinite
from surfcover.algebra.poly import MultiPoly, PlanePoint
from surfcover.errors import SurfcoverError
from surfcover.geometry.covers import SurfaceInvariants
from surfcover.geometry.picard import DivisorClass
from surfcover.models.results import CheckEntry, InvariantsSummary, ScenarioReport

logger = logging.getLogger(__name__)

CheckFn = Callable[[], tuple[bool, dict[str, Any]]]


def jsonable(value: Any) -> Any:
    """Exact values as JSON-safe data (strings for field elements, points and polynomials)."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, (GaussianRational, Fraction, PlanePoint, MultiPoly, Infinite)):
        return str(value)
    if isinstance(value, DivisorClass):
        return str(value)
    if isinstance(value, SurfaceInvariants):
        return value.model_dump()
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in value]
        return sorted(items, key=str) if isinstance(value, (set, frozenset)) else items
    return str(value)


class ReportBuilder:
    """Collects check entries for one scenario run, in execution order."""

    def __init__(self, scenario: str, seed: int) -> None:
        self.scenario = scenario
        self.seed = seed
        self.entries: list[CheckEntry] = []
        self.assumptions: list[str] = []

    def check(self, check_id: str, description: str, anchor: str, fn: CheckFn) -> bool:
        full_id = f"{self.scenario}.{check_id}"
        try:
            ok, values = fn()
        except SurfcoverError as exc:
            ok, values = False, {"error": f"{type(exc).__name__}: {exc}"}
        status = "PASS" if ok else "FAIL"
        self.entries.append(
            CheckEntry(id=full_id, description=description, anchor=anchor, status=status, values=jsonable(values))
        )
        logger.info("check %s: %s", full_id, status)
        return ok

    def expect(self, check_id: str, description: str, anchor: str, computed: Any, expected: Any) -> bool:
        return self.check(
            check_id, description, anchor,
            lambda: (computed == expected, {"computed": computed, "expected": expected}),
        )

    def assume(self, check_id: str, statement: str, anchor: str = "", values: dict[str, Any] | None = None) -> None:
        full_id = f"{self.scenario}.{check_id}"
        self.entries.append(
            CheckEntry(id=full_id, description=statement, anchor=anchor, status="ASSUMED", values=jsonable(values or {}))
        )
        self.assumptions.append(f"{full_id}: {statement}")
        logger.info("check %s: ASSUMED", full_id)

    @property
    def passed(self) -> bool:
        return all(e.status != "FAIL" for e in self.entries)

    def build(self, invariants: SurfaceInvariants | None = None) -> ScenarioReport:
        summary = InvariantsSummary(**invariants.model_dump()) if invariants is not None else InvariantsSummary()
        return ScenarioReport(
            scenario=self.scenario,
            seed=self.seed,
            checks=list(self.entries),
            invariants=summary,
            assumptions=list(self.assumptions),
        )
