"""Fixture-driven checks: irreducibility, singularities, intersections, systems, double covers."""

from __future__ import annotations

import logging
import re
from collections.abc import Mapping, Sequence

from surfcover.algebra.intersection import Infinite, intersection_multiplicity
from surfcover.algebra.irreducibility import absolute_factor_count
from surfcover.algebra.poly import MultiPoly, PlanePoint, monomials_of_degree, poly_product
from surfcover.config.run import RunConfig
from surfcover.config.scenario import ConditionSpec, IntersectionSpec, SystemSpec, TangencySpec
from surfcover.engine.context import ScenarioContext
from surfcover.engine.report import ReportBuilder
from surfcover.engine.transversality import transversality_certificate
from surfcover.errors import BranchContractViolated
from surfcover.geometry.covers import double_cover_invariants, minimal_model_Ksq
from surfcover.geometry.linsys import BaseCondition, LinearSystemResult, linear_system
from surfcover.geometry.picard import class_sum
from surfcover.geometry.singularity import (
    SingularityClass,
    classify_singularity,
    direction_of_line,
    is_tangent_line,
    rational_common_points,
    rational_singular_points,
)

logger = logging.getLogger(__name__)

_EXPECTED_CLASS = re.compile(r"^\s*(\w+)\s*(?:\(\s*([^)]*?)\s*\))?\s*$")


def union(ctx: ScenarioContext, expr: str) -> MultiPoly:
    """``"F6+F7"`` is the product of the named curves."""
    parts = [ctx.curve(name.strip()) for name in expr.split("+")]
    return parts[0] if len(parts) == 1 else poly_product(parts, parts[0].variables)


def matches_expected(cls: SingularityClass, text: str, ctx: ScenarioContext) -> bool:
    """Compare a computed class with fixture text such as ``Tacnode(T1)`` or ``TypePoint(3,3)``."""
    m = _EXPECTED_CLASS.match(text)
    if m is None:
        return False
    kind, arg = m.group(1), m.group(2)
    if kind != cls.kind:
        return False
    if kind == "Tacnode" and arg:
        return cls.tangent is not None and cls.tangent.equal_up_to_scalar(ctx.curve(arg))
    if kind == "OrdinaryMultiple" and arg:
        return int(arg) == cls.multiplicity
    if kind == "TypePoint" and arg:
        first, second = (int(s) for s in arg.split(","))
        return (first, second) == (cls.multiplicity, cls.second_multiplicity)
    return True


def build_conditions(
    specs: Sequence[ConditionSpec],
    points: Mapping[str, PlanePoint],
    lines: Mapping[str, MultiPoly],
) -> list[BaseCondition]:
    """Base conditions of a ``conditions`` list; a tangent adds a condition at the infinitely near point."""
    conds: list[BaseCondition] = []
    for c in specs:
        p = points[c.center]
        conds.append(BaseCondition(p, c.multiplicity))
        if c.tangent is not None:
            d = direction_of_line(lines[c.tangent], p)
            m2 = c.tangent_multiplicity or c.multiplicity
            conds.append(BaseCondition(p, m2, (d,), (c.multiplicity,)))
    return conds


def system_conditions(ctx: ScenarioContext, system: SystemSpec) -> list[BaseCondition]:
    points = {c.center: ctx.point(c.center) for c in system.conditions}
    lines = {c.tangent: ctx.curve(c.tangent) for c in system.conditions if c.tangent is not None}
    return build_conditions(system.conditions, points, lines)


def solve_system(ctx: ScenarioContext, name: str) -> LinearSystemResult:
    system = ctx.spec.systems[name]
    return linear_system(system.degree, system_conditions(ctx, system))


def satisfies(result: LinearSystemResult, F: MultiPoly) -> bool:
    """``F`` lies in the system: its coefficient vector is killed by every condition row."""
    vec = F.coefficient_vector(monomials_of_degree(result.degree, len(result.variables)))
    return not any(result.matrix.apply(vec))


# ═══════════════════════════════════════════════════════════════════════════
# Check groups
# ═══════════════════════════════════════════════════════════════════════════

def run_fixture_checks(builder: ReportBuilder, ctx: ScenarioContext, run: RunConfig, anchor: str) -> None:
    spec = ctx.spec

    for name in spec.irreducible:
        builder.check(
            f"irreducible.{name}", f"{name} is absolutely irreducible", anchor,
            lambda name=name: _irreducible(ctx, name, run.seed),
        )

    for curve, expected in spec.singularities.items():
        builder.check(
            f"singularities.{curve}", f"singularities of {curve} at the named points", anchor,
            lambda curve=curve, expected=expected: _singularities(ctx, curve, expected, run),
        )

    for curve in spec.singular_locus:
        builder.check(
            f"singular_locus.{curve}", f"{curve} has no singular points besides the named ones and the expected nodes", anchor,
            lambda curve=curve: _singular_locus(ctx, curve, run),
        )

    for inter in spec.intersections:
        a, b = inter.curves
        builder.check(
            f"intersection.{a}.{b}", f"local intersection numbers of {a} and {b}, and what is left", anchor,
            lambda inter=inter: _intersection(ctx, inter, run),
        )

    for t in spec.tangencies:
        builder.check(
            f"tangency.{t.curve}.{t.line}.{t.point}",
            f"{t.line} is {'' if t.tangent else 'not '}tangent to {t.curve} at {t.point}", anchor,
            lambda t=t: _tangency(ctx, t),
        )

    for name, system in spec.systems.items():
        builder.check(
            f"system.{name}", f"degree-{system.degree} system {name}: rows, rank and members", anchor,
            lambda name=name, system=system: _system(ctx, name, system),
        )


def run_double_cover_checks(builder: ReportBuilder, ctx: ScenarioContext, run: RunConfig) -> None:
    for name, dc in ctx.spec.double_covers.items():

        def _double(name: str = name, dc=dc) -> tuple[bool, dict]:
            M = ctx.L(dc.M)
            branch = class_sum((ctx.D(d) for d in dc.branch), ctx.config)
            if branch != M * 2:
                raise BranchContractViolated(f"branch {'+'.join(dc.branch)} is not 2·{dc.M}")
            inv = double_cover_invariants(M, ctx.config, ctx.catalog(), unloading_cap=run.unloading_cap)
            Ksq_min = minimal_model_Ksq(inv.Ksq, dc.contracted)
            ok = (inv.chi, inv.pg, inv.Ksq) == (dc.chi, dc.pg, dc.Ksq) and (dc.Ksq_min is None or Ksq_min == dc.Ksq_min)
            return ok, {
                "branch": "+".join(dc.branch),
                "M": M,
                "chi": inv.chi,
                "pg": inv.pg,
                "Ksq": inv.Ksq,
                "Ksq_min": Ksq_min,
                "contracted": dc.contracted,
            }

        builder.check(
            f"double_cover.{name}", f"double cover {name} branched on {'+'.join(dc.branch)}",
            dc.anchor, _double,
        )


def record_assumptions(builder: ReportBuilder, ctx: ScenarioContext) -> None:
    for a in ctx.spec.assumptions:
        builder.assume(a.id, a.statement, a.anchor)


# ── individual checks ───────────────────────────────────────────────────────

def _irreducible(ctx: ScenarioContext, name: str, seed: int) -> tuple[bool, dict]:
    count = absolute_factor_count(ctx.curve(name), seed)
    return count == 1, {"absolute_factors": count, "degree": ctx.curve(name).degree()}


def _singularities(ctx: ScenarioContext, curve: str, expected: dict[str, str], run: RunConfig) -> tuple[bool, dict]:
    F = union(ctx, curve)
    found: dict[str, dict] = {}
    ok = True
    delta = 0
    for pname, text in expected.items():
        cls = classify_singularity(F, ctx.point(pname), run.depth_cap)
        good = matches_expected(cls, text, ctx)
        ok = ok and good
        delta += cls.delta
        found[pname] = {"computed": str(cls), "expected": text, "delta": cls.delta, "ok": good}
    values: dict = {"points": found, "delta_sum": delta}
    if curve in ctx.spec.delta_sums:
        values["expected_delta_sum"] = ctx.spec.delta_sums[curve]
        ok = ok and delta == ctx.spec.delta_sums[curve]
        d = F.degree()
        arithmetic = (d - 1) * (d - 2) // 2
        values["arithmetic_genus"] = arithmetic
        values["geometric_genus"] = arithmetic - delta
        ok = ok and arithmetic - delta >= 0
    return ok, values


def _singular_locus(ctx: ScenarioContext, curve: str, run: RunConfig) -> tuple[bool, dict]:
    names = [name.strip() for name in curve.split("+")]
    found, complete = rational_singular_points([ctx.curve(n) for n in names], run.depth_cap)
    expected = {
        ctx.point(p)
        for key in {*names, curve}
        for p, text in ctx.spec.singularities.get(key, {}).items()
        if not text.startswith("Smooth")
    }
    points = {p for p, _ in found}
    extra = [(p, c) for p, c in found if p not in expected]
    nodes = ctx.spec.unnamed_nodes.get(curve, 0)
    ok = complete and expected <= points
    ok = ok and len(extra) == nodes and all(c.kind == "Node" for _, c in extra)
    return ok, {
        "singular_points": {str(p): str(c) for p, c in found},
        "unnamed": [str(p) for p, _ in extra],
        "expected_unnamed_nodes": nodes,
        "complete": complete,
    }


def _tangency(ctx: ScenarioContext, t: TangencySpec) -> tuple[bool, dict]:
    tangent = is_tangent_line(ctx.curve(t.curve), ctx.point(t.point), ctx.curve(t.line))
    return tangent == t.tangent, {"tangent": tangent, "expected": t.tangent}


def _intersection(ctx: ScenarioContext, inter: IntersectionSpec, run: RunConfig) -> tuple[bool, dict]:
    a, b = inter.curves
    A, B = ctx.curve(a), ctx.curve(b)
    local = {p: intersection_multiplicity(A, B, ctx.point(p)) for p in inter.at}
    if any(isinstance(v, Infinite) for v in local.values()):
        return False, {"local": {p: str(v) for p, v in local.items()}, "reason": f"{a} and {b} share a component"}
    ok = all(local[p] == v for p, v in inter.at.items())
    total = sum(local.values())
    values: dict = {"local": local, "total": total, "bezout": A.degree() * B.degree()}
    if inter.total is not None:
        ok = ok and total == inter.total
    if inter.residual is not None:
        named = [ctx.point(p) for p in inter.at]
        cert = transversality_certificate([A, B], named, run.seed, run.certificate_retries)
        values["residual"] = cert.residual_points
        values["transverse"] = cert.certified
        ok = ok and cert.certified and cert.residual_points == inter.residual
        ok = ok and total + cert.residual_points == A.degree() * B.degree()
        if cert.certified and cert.residual_points:
            pts, _ = rational_common_points([A, B])
            values["residual_coordinates"] = [str(p) for p in pts if p not in named]
    return ok, values


def _system(ctx: ScenarioContext, name: str, system: SystemSpec) -> tuple[bool, dict]:
    result = solve_system(ctx, name)
    rank = result.matrix.rank()
    values: dict = {
        "rows": result.matrix.rows,
        "columns": result.matrix.cols,
        "rank": rank,
        "dimension": result.dimension,
        "expected_dimension": result.expected_dimension,
    }
    ok = result.dimension >= 0
    if system.expected_rows is not None:
        ok = ok and result.matrix.rows == system.expected_rows
    if system.expected_rank is not None:
        ok = ok and rank == system.expected_rank
    if system.contains is not None:
        inside = satisfies(result, ctx.curve(system.contains))
        values[f"contains_{system.contains}"] = inside
        ok = ok and inside
    return ok, values
