"""From a fixture to geometry: points, curves, the blow-up and branch components.

The seeded runners compute some points and curves themselves and pass them
in as ``extra_points`` / ``extra_curves``; everything the fixture names must
then resolve, or a ``FixtureError`` says which name is missing.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Mapping

from surfcover.algebra.parser import parse_poly, parse_scalar, strip_assignment
from surfcover.algebra.poly import LOCAL_VARS, MultiPoly, PlanePoint, line_through, localize
from surfcover.config.scenario import ClassSpec, ClassTable, ComponentSpec, ScenarioSpec
from surfcover.errors import ConfigMismatch, FixtureError, ParseError
from surfcover.geometry.picard import BlowupConfiguration, Center, DivisorClass, class_sum
from surfcover.geometry.singularity import (
    Direction,
    cone_is_squarefree,
    direction_of_line,
    strict_transform,
)

logger = logging.getLogger(__name__)

_COMBINATION_TERM = re.compile(r"\s*([+-]?)\s*(\d*)\s*(K|L[123]|D[123])\s*")


@dataclass
class Component:
    """One irreducible component of a branch divisor on the blow-up."""

    name: str
    kind: str  # "curve" | "exceptional"
    source: str  # curve name or center label
    cls: DivisorClass
    printed: DivisorClass | None = None
    square: int | None = None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "class": str(self.cls),
            "printed": str(self.printed) if self.printed is not None else None,
            "square": self.cls.square,
            "declared_square": self.square,
        }


@dataclass
class ScenarioContext:
    spec: ScenarioSpec
    points: dict[str, PlanePoint]
    curves: dict[str, MultiPoly]
    config: BlowupConfiguration
    center_points: dict[str, PlanePoint] = field(default_factory=dict)

    # ── classes ─────────────────────────────────────────────────────────────

    def resolve_class(self, spec: ClassSpec) -> DivisorClass:
        if isinstance(spec, ClassTable):
            mults = {}
            for key, m in spec.mults.items():
                label = key[1:] if key.startswith("E") else key
                mults[label] = m
            return self.config.cls(spec.degree, mults)
        return self.config.parse_class(spec)

    def branch_names(self) -> list[str]:
        return sorted(self.spec.branch)

    def D(self, name: str) -> DivisorClass:
        return self.resolve_class(self.spec.branch[name].class_)

    def L(self, name: str) -> DivisorClass:
        return self.resolve_class(self.spec.L[name])

    @property
    def K(self) -> DivisorClass:
        return self.config.canonical_class()

    def curve_class(self, name: str) -> DivisorClass:
        return self.config.strict_transform_class(self.curve(name))

    def curve(self, name: str) -> MultiPoly:
        try:
            return self.curves[name]
        except KeyError:
            raise FixtureError(f"scenario {self.spec.name} names an unknown curve {name!r}") from None

    def point(self, name: str) -> PlanePoint:
        try:
            return self.points[name]
        except KeyError:
            raise FixtureError(f"scenario {self.spec.name} names an unknown point {name!r}") from None

    def evaluate(self, text: str) -> DivisorClass:
        """A combination such as ``"2K+L1+L2+L3"`` or ``"K+L1"``."""
        acc = self.config.zero()
        pos = 0
        while pos < len(text):
            if not text[pos:].strip():
                break
            m = _COMBINATION_TERM.match(text, pos)
            if m is None or m.end() == pos:
                raise ParseError(f"cannot read {text!r}", pos, "[+|-] [integer] K, L1..L3 or D1..D3")
            coeff = int(m.group(2)) if m.group(2) else 1
            if m.group(1) == "-":
                coeff = -coeff
            symbol = m.group(3)
            if symbol == "K":
                term = self.K
            elif symbol.startswith("L"):
                term = self.L(symbol)
            else:
                term = self.D(symbol)
            acc = acc + term * coeff
            pos = m.end()
        return acc

    # ── components ──────────────────────────────────────────────────────────

    def components(self, name: str) -> list[Component]:
        return [self._component(c) for c in self.spec.branch[name].components]

    def _component(self, c: ComponentSpec) -> Component:
        printed = self.resolve_class(c.class_) if c.class_ is not None else None
        if c.curve is not None:
            return Component(c.curve, "curve", c.curve, self.curve_class(c.curve), printed, c.square)
        label = c.exceptional
        self.config.index(label)
        return Component(f"E{label}", "exceptional", label, self.config.exceptional_strict(label), printed, c.square)

    def support_curves(self, name: str) -> list[tuple[str, MultiPoly]]:
        return [(c.curve, self.curve(c.curve)) for c in self.spec.branch[name].components if c.curve is not None]

    def catalog(self) -> list[DivisorClass]:
        """Irreducible negative curves used to unload fixed parts."""
        out = [self.config.exceptional_strict(lab) for lab in self.config.labels]
        out.extend(self.curve_class(name) for name in self.spec.catalog_curves)
        return out

    def proper_centers(self) -> list[PlanePoint]:
        return [c.point for c in self.config.centers if c.point is not None]


# ═══════════════════════════════════════════════════════════════════════════
# Building
# ═══════════════════════════════════════════════════════════════════════════

def read_curve(text: str) -> MultiPoly:
    """A projective curve from listing text (``NAME:=`` prefix and ``;`` allowed)."""
    F = parse_poly(strip_assignment(text.strip()))
    if not F.is_homogeneous():
        raise ConfigMismatch("a plane curve needs a homogeneous equation in x, y, z")
    return F


def _direction(text: str) -> Direction:
    if text.strip().lower() == "vertical":
        return Direction.vertical()
    return Direction.of_slope(parse_scalar(text))


def build_context(
    spec: ScenarioSpec,
    extra_points: Mapping[str, PlanePoint] | None = None,
    extra_curves: Mapping[str, MultiPoly] | None = None,
) -> ScenarioContext:
    points: dict[str, PlanePoint] = {}
    for name, text in spec.points.items():
        try:
            points[name] = PlanePoint.from_text(text)
        except ValueError as exc:
            raise FixtureError(f"point {name}: {exc}") from exc
    points.update(extra_points or {})

    curves: dict[str, MultiPoly] = dict(extra_curves or {})
    for name, cspec in spec.curves.items():
        if name in curves:
            continue
        if cspec.line is not None:
            a, b = cspec.line
            if a not in points or b not in points:
                raise FixtureError(f"line {name} needs points {a!r} and {b!r}")
            curves[name] = line_through(points[a], points[b])
        else:
            curves[name] = read_curve(spec.read_curve_text(name))

    centers: list[Center] = []
    center_points: dict[str, PlanePoint] = {}
    for c in spec.centers:
        if c.point is not None:
            if c.point not in points:
                raise FixtureError(f"center {c.label} sits on unknown point {c.point!r}")
            centers.append(Center(c.label, point=points[c.point]))
            center_points[c.label] = points[c.point]
            continue
        parent_point = center_points.get(c.parent)
        if c.tangent is not None:
            if parent_point is None:
                raise FixtureError(f"center {c.label}: a tangent line needs a proper parent")
            if c.tangent not in curves:
                raise FixtureError(f"center {c.label} uses unknown line {c.tangent!r}")
            d = direction_of_line(curves[c.tangent], parent_point)
        else:
            d = _direction(c.direction)
        centers.append(Center(c.label, parent=c.parent, direction=d))
    cfg = BlowupConfiguration(centers)
    logger.debug("scenario %s: %d points, %d curves, %d centers", spec.name, len(points), len(curves), len(cfg))
    return ScenarioContext(spec, points, curves, cfg, center_points)


# ═══════════════════════════════════════════════════════════════════════════
# Local pictures at centers
# ═══════════════════════════════════════════════════════════════════════════

def local_equation(F: MultiPoly, cfg: BlowupConfiguration, label: str) -> MultiPoly:
    """Equation of the strict transform of ``F`` in the chart of center ``label``."""
    p, directions = cfg.chain(label)
    f = localize(F, p)
    for d in directions:
        if f.constant_term():
            return f
        f = strict_transform(f, d)
    return f


def _direction_form(d: Direction) -> MultiPoly:
    u, v = MultiPoly.gens(LOCAL_VARS)
    if d.is_vertical:
        return u
    return v - u * d.slope


@dataclass
class Crossing:
    """Where a curve meets the exceptional curve of a center, away from later centers."""

    count: int
    simple: bool
    form: MultiPoly | None

    def to_json(self) -> dict:
        return {"count": self.count, "simple": self.simple, "directions": str(self.form) if self.form else None}


def exceptional_crossings(F: MultiPoly, cfg: BlowupConfiguration, label: str) -> Crossing:
    """Tangent directions of ``F`` at ``label`` that are not later centers nor other exceptional curves."""
    f = local_equation(F, cfg, label)
    if f.constant_term():
        return Crossing(0, True, None)
    rest = f.lowest_part()
    excluded = [child.direction for child in cfg.children(label)]
    excluded.extend(cfg.exceptional_direction(q, at=label) for q in cfg.proximate(label))
    for d in excluded:
        lin = _direction_form(d)
        while True:
            q, r = rest.divmod_exact(lin)
            if r:
                break
            rest = q
    count = rest.degree()
    return Crossing(count, cone_is_squarefree(rest), rest if count else None)


def class_of_components(components: list[Component], cfg: BlowupConfiguration) -> DivisorClass:
    return class_sum((c.cls for c in components), cfg)
