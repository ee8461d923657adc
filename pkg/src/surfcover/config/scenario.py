"""Scenario fixtures, one YAML file per construction.

A fixture names its points, curves, blow-up centers, branch data and the
class identities it expects; the runners in ``surfcover.engine`` turn these
into checks.  Points and classes may be referenced before they exist in the
file: the seeded constructions add the points and curves they compute.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Any, Literal, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, ValidationError, model_validator

from surfcover.errors import FixtureError

SCENARIO_NAMES = ("pgq0", "pgq1", "pgq2")


class ClassTable(BaseModel):
    """``degree·T − Σ mults[E]·E``; unmentioned centers have multiplicity 0."""

    degree: int = Field(..., description="Coefficient of the pulled-back line class")
    mults: dict[str, int] = Field(default_factory=dict, description="Multiplicity per center, keyed 'E0', \"E1'\", ...")


ClassSpec = Union[str, ClassTable]


class CurveSpec(BaseModel):
    """A plane curve: explicit text, a fixture file, or the line through two named points."""

    text: Optional[str] = Field(None, description="Polynomial in x, y, z")
    file: Optional[str] = Field(None, description="Path (relative to the fixture) of a curve listing")
    line: Optional[tuple[str, str]] = Field(None, description="Names of two points the line passes through")

    @model_validator(mode="after")
    def _exactly_one_source(self) -> CurveSpec:
        given = [s for s in (self.text, self.file, self.line) if s is not None]
        if len(given) != 1:
            raise ValueError("a curve needs exactly one of text, file or line")
        return self


class CenterSpec(BaseModel):
    """A blown-up point: a named plane point, or infinitely near ``parent``."""

    label: str = Field(..., description="Center label; classes refer to E<label>")
    point: Optional[str] = Field(None, description="Name of a plane point")
    parent: Optional[str] = Field(None, description="Label of the center this one is infinitely near to")
    tangent: Optional[str] = Field(None, description="Name of a line through the parent giving the direction")
    direction: Optional[str] = Field(None, description="'vertical' or a slope in the parent's chart")

    @model_validator(mode="after")
    def _proper_or_infinitely_near(self) -> CenterSpec:
        if (self.point is None) == (self.parent is None):
            raise ValueError(f"center {self.label!r} needs exactly one of point or parent")
        if self.parent is not None and (self.tangent is None) == (self.direction is None):
            raise ValueError(f"infinitely near center {self.label!r} needs exactly one of tangent or direction")
        return self


class ComponentSpec(BaseModel):
    """One irreducible component of a branch divisor."""

    model_config = ConfigDict(populate_by_name=True)

    curve: Optional[str] = Field(None, description="Strict transform of this named curve")
    exceptional: Optional[str] = Field(None, description="Strict transform of the exceptional curve of this center")
    class_: Optional[ClassSpec] = Field(None, alias="class", description="Printed class of the component")
    square: Optional[int] = Field(None, description="Expected self-intersection")

    @model_validator(mode="after")
    def _one_support(self) -> ComponentSpec:
        if (self.curve is None) == (self.exceptional is None):
            raise ValueError("a component is either a curve or an exceptional curve")
        return self


class BranchSpec(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    class_: ClassSpec = Field(..., alias="class", description="Printed class of D_g")
    components: list[ComponentSpec] = Field(default_factory=list)


class ConditionSpec(BaseModel):
    """Singularity condition for a linear system: ``{center, multiplicity, tangent?}``."""

    center: str = Field(..., description="Name of a plane point")
    multiplicity: int = Field(..., ge=1, le=12)
    tangent: Optional[str] = Field(None, description="Line whose direction carries the second condition")
    tangent_multiplicity: Optional[int] = Field(None, ge=1, le=12)


class SystemSpec(BaseModel):
    degree: int = Field(..., ge=1, le=12)
    conditions: list[ConditionSpec] = Field(default_factory=list)
    expected_rows: Optional[int] = Field(None, ge=0)
    expected_rank: Optional[int] = Field(None, ge=0)
    contains: Optional[str] = Field(None, description="Curve that must satisfy every condition of the system")


class IntersectionSpec(BaseModel):
    """Local intersection numbers of two curves at named points, with the Bézout remainder."""

    curves: tuple[str, str]
    at: dict[str, int] = Field(default_factory=dict, description="Point name → I_p")
    total: Optional[int] = Field(None, description="Σ I_p over the named points")
    residual: Optional[int] = Field(None, ge=0, description="Transverse intersections left over")


class TangencySpec(BaseModel):
    curve: str
    line: str
    point: str
    tangent: bool = True


class DoubleCoverSpec(BaseModel):
    """Double cover of the blow-up branched on ``ΣD ≡ 2M``."""

    M: str = Field(..., description="Name of the L class with 2M ≡ branch")
    branch: list[str] = Field(..., min_length=1, description="Names of the D's forming the branch locus")
    chi: int
    pg: Optional[int] = None
    Ksq: int
    contracted: int = Field(0, ge=0)
    Ksq_min: Optional[int] = None
    anchor: str = ""


class IdentitySpec(BaseModel):
    """``lhs ≡ rhs`` with ``lhs`` a combination of K, L1..L3, D1..D3."""

    lhs: str
    rhs: ClassSpec
    anchor: str = ""


class ExpectedInvariants(BaseModel):
    chi: int
    pg: Optional[int] = None
    Ksq: int
    Ksq_min: Optional[int] = None
    contracted: int = Field(0, ge=0, description="(−1)-curves contracted to reach the minimal model")


class AssumptionSpec(BaseModel):
    id: str
    statement: str
    anchor: str = ""


class ScenarioSpec(BaseModel):
    """Everything a runner needs for one construction."""

    name: Literal["pgq0", "pgq1", "pgq2"]
    title: str = ""
    anchor: str = ""
    points: dict[str, str] = Field(default_factory=dict, description="Name → 'x,y,z' over Q(i)")
    curves: dict[str, CurveSpec] = Field(default_factory=dict)
    centers: list[CenterSpec] = Field(default_factory=list)
    branch: dict[str, BranchSpec] = Field(default_factory=dict, description="D1, D2, D3")
    L: dict[str, ClassSpec] = Field(default_factory=dict, description="L1, L2, L3")
    identities: list[IdentitySpec] = Field(default_factory=list)
    systems: dict[str, SystemSpec] = Field(default_factory=dict)
    catalog_curves: list[str] = Field(
        default_factory=list, description="Curves whose strict transforms join the unloading catalog"
    )
    irreducible: list[str] = Field(default_factory=list, description="Curves checked absolutely irreducible")
    singularities: dict[str, dict[str, str]] = Field(
        default_factory=dict,
        description="Curve (or 'A+B' for a union) → point name → expected class, e.g. 'Tacnode(T1)'",
    )
    delta_sums: dict[str, int] = Field(default_factory=dict, description="Curve → Σδ over its singular points")
    singular_locus: list[str] = Field(
        default_factory=list, description="Curves whose whole rational singular locus is computed and compared"
    )
    unnamed_nodes: dict[str, int] = Field(
        default_factory=dict,
        description="Curve or union → number of singular points besides the named ones, each a node",
    )
    intersections: list[IntersectionSpec] = Field(default_factory=list)
    tangencies: list[TangencySpec] = Field(default_factory=list)
    double_covers: dict[str, DoubleCoverSpec] = Field(default_factory=dict)
    parameters: dict[str, Any] = Field(default_factory=dict, description="Ranges for seeded choices")
    expected: ExpectedInvariants
    assumptions: list[AssumptionSpec] = Field(default_factory=list)

    _base_dir: Path = PrivateAttr(default_factory=Path.cwd)

    @property
    def base_dir(self) -> Path:
        return self._base_dir

    def read_curve_text(self, name: str) -> str:
        spec = self.curves[name]
        if spec.text is not None:
            return spec.text
        if spec.file is None:
            raise FixtureError(f"curve {name!r} has no text")
        path = self._base_dir / spec.file
        if not path.is_file():
            raise FixtureError(f"curve file not found: {path}")
        return path.read_text(encoding="utf-8")


class ConditionsFile(BaseModel):
    """Stand-alone condition list for ``surfcover linsys``.

    Conditions name points and tangent lines declared in the same file, so one
    file reads like the ``systems`` block of a scenario.
    """

    points: dict[str, str] = Field(..., min_length=1, description="Name → 'x,y,z' over Q(i)")
    lines: dict[str, str] = Field(default_factory=dict, description="Name → linear form in x, y, z")
    conditions: list[ConditionSpec] = Field(default_factory=list)

    @model_validator(mode="after")
    def _names_resolve(self) -> ConditionsFile:
        for c in self.conditions:
            if c.center not in self.points:
                raise ValueError(f"condition names unknown point {c.center!r}")
            if c.tangent is not None and c.tangent not in self.lines:
                raise ValueError(f"condition names unknown line {c.tangent!r}")
        return self


def load_conditions(path: str | Path) -> ConditionsFile:
    path = Path(path)
    if not path.is_file():
        raise FixtureError(f"conditions file not found: {path}")
    try:
        raw = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise FixtureError(f"{path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise FixtureError(f"{path}: expected a mapping at the top level")
    return ConditionsFile.model_validate(raw)


def scenarios_dir() -> Path:
    """Fixture directory: ``$SURFCOVER_SCENARIOS`` or the repository's ``scenarios/``."""
    env = os.environ.get("SURFCOVER_SCENARIOS")
    if env:
        return Path(env)
    return Path(__file__).resolve().parents[3] / "scenarios"


def load_scenario(path: str | Path) -> ScenarioSpec:
    """Read and validate a scenario fixture; a scenario name resolves in :func:`scenarios_dir`."""
    path = Path(path)
    if path.suffix not in (".yaml", ".yml") and path.name in SCENARIO_NAMES:
        path = scenarios_dir() / f"{path.name}.yaml"
    if not path.is_file():
        raise FixtureError(f"scenario fixture not found: {path}")
    try:
        raw = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise FixtureError(f"{path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise FixtureError(f"{path}: expected a mapping at the top level")
    spec = ScenarioSpec.model_validate(raw)
    spec._base_dir = path.parent
    return spec


__all__ = [
    "AssumptionSpec",
    "BranchSpec",
    "CenterSpec",
    "ClassSpec",
    "ClassTable",
    "ComponentSpec",
    "ConditionSpec",
    "ConditionsFile",
    "CurveSpec",
    "DoubleCoverSpec",
    "ExpectedInvariants",
    "IdentitySpec",
    "IntersectionSpec",
    "SCENARIO_NAMES",
    "ScenarioSpec",
    "SystemSpec",
    "TangencySpec",
    "ValidationError",
    "load_conditions",
    "load_scenario",
    "scenarios_dir",
]
