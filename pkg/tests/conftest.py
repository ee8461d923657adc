"""Shared test fixtures: the pgq0 curves and points, loaded scenario fixtures."""

from __future__ import annotations

import pytest

from surfcover.algebra.poly import PlanePoint
from surfcover.config.run import RunConfig
from surfcover.config.scenario import load_scenario, scenarios_dir
from surfcover.engine.context import build_context, read_curve
from surfcover.engine.orchestrator import run_scenario


@pytest.fixture(scope="session")
def F6():
    return read_curve((scenarios_dir() / "curves" / "F6.txt").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def F7():
    return read_curve((scenarios_dir() / "curves" / "F7.txt").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def pgq0_points() -> dict[str, PlanePoint]:
    return {
        "p0": PlanePoint.from_text("0,0,1"),
        "p1": PlanePoint.from_text("-2,1,1"),
        "p2": PlanePoint.from_text("2,1,1"),
        "p3": PlanePoint.from_text("-1,2,1"),
        "p4": PlanePoint.from_text("1,2,1"),
        "p5": PlanePoint.from_text("3,2*i,1"),
    }


@pytest.fixture
def pgq0_spec():
    return load_scenario("pgq0")


@pytest.fixture
def pgq1_spec():
    return load_scenario("pgq1")


@pytest.fixture
def pgq2_spec():
    return load_scenario("pgq2")


@pytest.fixture
def run_config() -> RunConfig:
    return RunConfig(seed=0)


@pytest.fixture(scope="session")
def pgq0_context():
    """pgq0 points, curves and its ten-center configuration."""
    return build_context(load_scenario("pgq0"))


@pytest.fixture(scope="session")
def pgq0_cfg(pgq0_context):
    return pgq0_context.config


@pytest.fixture(scope="session")
def scenario_report():
    """Seed-0 report per scenario, computed once per session."""
    cache = {}

    def get(name: str):
        if name not in cache:
            cache[name] = run_scenario(name, RunConfig(seed=0))
        return cache[name]

    return get
