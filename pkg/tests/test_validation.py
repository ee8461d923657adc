"""Pydantic validation tests: invalid run settings and fixtures are rejected.

Covers RunConfig bounds, every fixture sub-model with a cross-field rule,
the shipped scenario fixtures, and fixture loading errors.
"""

from __future__ import annotations

import pytest
from pydantic import ValidationError

from surfcover.config.run import RunConfig
from surfcover.config.scenario import (
    SCENARIO_NAMES,
    CenterSpec,
    ComponentSpec,
    ConditionsFile,
    ConditionSpec,
    CurveSpec,
    DoubleCoverSpec,
    ExpectedInvariants,
    load_conditions,
    load_scenario,
)
from surfcover.errors import FixtureError
from surfcover.geometry.covers import AmbientType, Prop1Input


# ═══════════════════════════════════════════════════════════════════════════
# RunConfig
# ═══════════════════════════════════════════════════════════════════════════

class TestRunConfigValidation:
    """RunConfig field constraints."""

    def test_defaults_are_valid(self):
        cfg = RunConfig()
        assert cfg.seed == 0
        assert cfg.depth_cap == 16

    @pytest.mark.parametrize("field, value", [
        ("seed", -1),
        ("depth_cap", 0),
        ("depth_cap", 65),
        ("unloading_cap", 0),
        ("certificate_retries", 0),
        ("max_seed_attempts", 0),
    ])
    def test_out_of_range(self, field, value):
        with pytest.raises(ValidationError):
            RunConfig(**{field: value})


# ═══════════════════════════════════════════════════════════════════════════
# Fixture models
# ═══════════════════════════════════════════════════════════════════════════

class TestCurveSpec:
    """Exactly one of text, file, line."""

    def test_each_source_alone(self):
        assert CurveSpec(text="x").text == "x"
        assert CurveSpec(file="curves/F6.txt").file == "curves/F6.txt"
        assert CurveSpec(line=("p0", "p1")).line == ("p0", "p1")

    def test_none_or_two_rejected(self):
        with pytest.raises(ValidationError):
            CurveSpec()
        with pytest.raises(ValidationError):
            CurveSpec(text="x", line=("p0", "p1"))


class TestCenterSpec:
    """Proper points and infinitely near points."""

    def test_proper(self):
        assert CenterSpec(label="0", point="p0").parent is None

    def test_infinitely_near(self):
        assert CenterSpec(label="1'", parent="1", tangent="T1").tangent == "T1"
        assert CenterSpec(label="1'", parent="1", direction="vertical").direction == "vertical"

    @pytest.mark.parametrize("kwargs", [
        {"label": "x"},
        {"label": "x", "point": "p0", "parent": "0"},
        {"label": "x", "parent": "0"},
        {"label": "x", "parent": "0", "tangent": "T1", "direction": "0"},
    ])
    def test_rejected(self, kwargs):
        with pytest.raises(ValidationError):
            CenterSpec(**kwargs)


class TestComponentSpec:
    """Curve or exceptional, with the 'class' alias."""

    def test_alias(self):
        c = ComponentSpec.model_validate({"curve": "T1", "class": "T - E0", "square": 0})
        assert c.class_ == "T - E0"

    def test_table_class(self):
        c = ComponentSpec.model_validate({"exceptional": "1", "class": {"degree": 0, "mults": {"E1": -1}}})
        assert c.class_.mults == {"E1": -1}

    def test_needs_one_support(self):
        with pytest.raises(ValidationError):
            ComponentSpec(curve="T1", exceptional="1")
        with pytest.raises(ValidationError):
            ComponentSpec()


class TestConditions:
    """Condition lists and stand-alone condition files."""

    def test_multiplicity_bounds(self):
        with pytest.raises(ValidationError):
            ConditionSpec(center="p", multiplicity=0)
        with pytest.raises(ValidationError):
            ConditionSpec(center="p", multiplicity=2, tangent_multiplicity=13)

    def test_names_must_resolve(self):
        with pytest.raises(ValidationError, match="unknown point"):
            ConditionsFile(points={"a": "0,0"}, conditions=[ConditionSpec(center="b", multiplicity=1)])
        with pytest.raises(ValidationError, match="unknown line"):
            ConditionsFile(points={"a": "0,0"}, conditions=[ConditionSpec(center="a", multiplicity=2, tangent="t")])

    def test_points_required(self):
        with pytest.raises(ValidationError):
            ConditionsFile(points={})

    def test_load_conditions(self, tmp_path):
        path = tmp_path / "c.yaml"
        path.write_text("points: {a: '0,0,1'}\nconditions:\n  - {center: a, multiplicity: 3}\n", encoding="utf-8")
        assert load_conditions(path).conditions[0].multiplicity == 3
        with pytest.raises(FixtureError):
            load_conditions(tmp_path / "missing.yaml")
        bad = tmp_path / "bad.yaml"
        bad.write_text("points: [unclosed\n", encoding="utf-8")
        with pytest.raises(FixtureError):
            load_conditions(bad)


class TestInvariantModels:
    """Expected invariants, double cover specs and branch data."""

    def test_negative_contracted(self):
        with pytest.raises(ValidationError):
            ExpectedInvariants(chi=1, Ksq=7, contracted=-1)

    def test_double_cover_needs_branch(self):
        with pytest.raises(ValidationError):
            DoubleCoverSpec(M="L1", branch=[], chi=2, Ksq=0)

    def test_prop1_input_bounds(self):
        with pytest.raises(ValidationError):
            Prop1Input(ambient=AmbientType.ABELIAN, chi_X=0, n=-1, L_sq=4)
        with pytest.raises(ValidationError):
            Prop1Input(ambient="torus", chi_X=0, n=0, L_sq=4)


# ═══════════════════════════════════════════════════════════════════════════
# Shipped fixtures
# ═══════════════════════════════════════════════════════════════════════════

class TestShippedFixtures:
    """Every scenario on disk loads and is self-consistent."""

    @pytest.mark.parametrize("name", SCENARIO_NAMES)
    def test_loads(self, name):
        spec = load_scenario(name)
        assert spec.name == name
        assert set(spec.branch) == {"D1", "D2", "D3"}
        assert set(spec.L) == {"L1", "L2", "L3"}
        assert spec.expected.Ksq + spec.expected.contracted == spec.expected.Ksq_min

    def test_pgq0_listing_files_exist(self, pgq0_spec):
        for name in ("F6", "F7"):
            assert pgq0_spec.read_curve_text(name).strip()

    def test_missing_listing(self, pgq0_spec):
        pgq0_spec.curves["F6"] = CurveSpec(file="curves/absent.txt")
        with pytest.raises(FixtureError):
            pgq0_spec.read_curve_text("F6")

    def test_unknown_fixture(self, tmp_path):
        with pytest.raises(FixtureError):
            load_scenario(tmp_path / "nothing.yaml")

    def test_wrong_scenario_name(self, tmp_path):
        path = tmp_path / "x.yaml"
        path.write_text("name: pgq7\nexpected: {chi: 1, Ksq: 7}\n", encoding="utf-8")
        with pytest.raises(ValidationError):
            load_scenario(path)
