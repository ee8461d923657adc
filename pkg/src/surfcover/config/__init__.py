"""Configuration models: run settings and scenario fixtures."""

from surfcover.config.run import RunConfig
from surfcover.config.scenario import (
    ClassTable,
    ConditionSpec,
    ConditionsFile,
    CurveSpec,
    ScenarioSpec,
    SystemSpec,
    load_conditions,
    load_scenario,
    scenarios_dir,
)

__all__ = [
    "RunConfig",
    "ClassTable",
    "ConditionSpec",
    "ConditionsFile",
    "CurveSpec",
    "ScenarioSpec",
    "SystemSpec",
    "load_conditions",
    "load_scenario",
    "scenarios_dir",
]
