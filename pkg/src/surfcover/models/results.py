"""Report contracts returned by the scenario runners, the CLI and the API."""

from __future__ import annotations

import json
from typing import Any, Literal, Optional

from pydantic import BaseModel, Field

Status = Literal["PASS", "FAIL", "ASSUMED"]


class CheckEntry(BaseModel):
    """One verified (or assumed) statement of a construction."""

    id: str = Field(..., description="Stable check identifier, e.g. 'pgq0.bezout'")
    description: str = Field("", description="What was checked")
    anchor: str = Field("", description="Where the statement comes from in the construction")
    status: Status
    values: dict[str, Any] = Field(default_factory=dict, description="Computed values (JSON-safe)")


class InvariantsSummary(BaseModel):
    chi: Optional[int] = None
    pg: Optional[int] = None
    Ksq: Optional[int] = None
    Ksq_min: Optional[int] = None


class ScenarioReport(BaseModel):
    """Outcome of one scenario run.

    ``passed`` is true iff no entry FAILed; ASSUMED entries never fail a run.
    """

    scenario: str
    seed: int = 0
    checks: list[CheckEntry] = Field(default_factory=list)
    invariants: InvariantsSummary = Field(default_factory=InvariantsSummary)
    assumptions: list[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != "FAIL" for c in self.checks)

    @property
    def failures(self) -> list[CheckEntry]:
        return [c for c in self.checks if c.status == "FAIL"]

    def check(self, check_id: str) -> CheckEntry:
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)

    def to_dict(self) -> dict[str, Any]:
        data = self.model_dump()
        data["passed"] = self.passed
        return data

    def to_json(self) -> str:
        """Sorted-key JSON; equal seeds give byte-identical output."""
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)
