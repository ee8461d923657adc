"""Scenario dispatch: one entry point for the CLI and the HTTP surface.

Entry point: ``run_scenario(name, config)``
  - ``pgq0`` → fixed curves F6, F7 and the bidouble cover with q = 0
  - ``pgq1`` → seeded p4 and the kernel members C5, C6
  - ``pgq2`` → seeded pencil conics and the double cover of an abelian surface
"""

from __future__ import annotations

import logging
from typing import Callable, Optional

from surfcover.config.run import RunConfig
from surfcover.config.scenario import SCENARIO_NAMES, ScenarioSpec, load_scenario
from surfcover.engine.pgq0 import run_pgq0
from surfcover.engine.pgq1 import run_pgq1
from surfcover.engine.pgq2 import run_pgq2
from surfcover.errors import FixtureError
from surfcover.models.results import ScenarioReport

logger = logging.getLogger(__name__)

Runner = Callable[[RunConfig, ScenarioSpec], ScenarioReport]

RUNNERS: dict[str, Runner] = {
    "pgq0": run_pgq0,
    "pgq1": run_pgq1,
    "pgq2": run_pgq2,
}


def run_scenario(name: str, config: Optional[RunConfig] = None, spec: Optional[ScenarioSpec] = None) -> ScenarioReport:
    """Run one named construction; ``spec`` overrides the fixture on disk."""
    if name not in RUNNERS:
        raise FixtureError(f"unknown scenario {name!r}; expected one of {', '.join(SCENARIO_NAMES)}")
    config = config or RunConfig()
    spec = spec or load_scenario(name)
    if spec.name != name:
        raise FixtureError(f"fixture describes {spec.name!r}, not {name!r}")
    logger.info("scenario %s: seed %d", name, config.seed)
    return RUNNERS[name](config, spec)
