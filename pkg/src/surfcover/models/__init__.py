"""Result contracts."""

from surfcover.models.results import CheckEntry, InvariantsSummary, ScenarioReport

__all__ = ["CheckEntry", "InvariantsSummary", "ScenarioReport"]
