"""The p_g = q = 1 construction: C5 and C6 as kernel members at a seeded p4.

p0..p3 are fixed; p4 and the slope of the line T through p0 come from the
seed.  A choice that breaks general position (p4 on a line T_i, a system of
the wrong dimension, a member with extra multiplicity, T tangent to a branch)
raises ``DegenerateChoice`` and the next seed is tried.
"""

from __future__ import annotations

import logging
from itertools import combinations
from typing import Any

import numpy as np

from surfcover.algebra.intersection import intersection_multiplicity
from surfcover.algebra.poly import PROJECTIVE_VARS, MultiPoly, PlanePoint, line_through
from surfcover.config.run import RunConfig
from surfcover.config.scenario import ScenarioSpec, load_scenario
from surfcover.engine.branch import run_branch_checks
from surfcover.engine.common import record_assumptions, run_fixture_checks, solve_system, system_conditions
from surfcover.engine.context import ScenarioContext, build_context
from surfcover.engine.report import ReportBuilder
from surfcover.errors import DegenerateChoice
from surfcover.geometry.linsys import find_member, verify_member
from surfcover.geometry.picard import DivisorClass
from surfcover.models.results import ScenarioReport

logger = logging.getLogger(__name__)

ANCHOR = "pgq1: curves C5, C6 and the bidouble cover"

FIXED = ("p0", "p1", "p2", "p3")
LINES = ("T1", "T2", "T3")


def printed_class(ctx: ScenarioContext, curve: str) -> DivisorClass | None:
    """Class the fixture prints for a branch component curve, if any."""
    for branch in ctx.spec.branch.values():
        for c in branch.components:
            if c.curve == curve and c.class_ is not None:
                return ctx.resolve_class(c.class_)
    return None


def pgq1_configuration(spec: ScenarioSpec, p4: PlanePoint) -> ScenarioContext:
    """Blow-up configuration at a given p4; ``DegenerateChoice`` if p4 is not general."""
    ctx = build_context(spec, {"p4": p4})
    for name in FIXED:
        if ctx.point(name) == p4:
            raise DegenerateChoice(f"p4 = {p4} coincides with {name}")
    for name in LINES:
        if p4.lies_on(ctx.curve(name)):
            raise DegenerateChoice(f"p4 = {p4} lies on {name}")
    for a, b in combinations(FIXED[1:], 2):
        if p4.lies_on(line_through(ctx.point(a), ctx.point(b))):
            raise DegenerateChoice(f"p4 = {p4} is collinear with {a} and {b}")
    return ctx


def system_member(ctx: ScenarioContext, name: str, seed: int) -> MultiPoly:
    result = solve_system(ctx, name)
    if result.dimension < 0:
        raise DegenerateChoice(f"system {name} is empty")
    F = find_member(result) if result.dimension == 0 else find_member(result, combination_seed=seed)
    expected = printed_class(ctx, name)
    got = ctx.config.strict_transform_class(F)
    if expected is not None and got != expected:
        raise DegenerateChoice(f"{name} has class {got}, expected {expected}")
    return F


def line_through_p0(ctx: ScenarioContext, C5: MultiPoly, C6: MultiPoly, rng: np.random.Generator,
                    lo: int, hi: int) -> tuple[MultiPoly, int]:
    """``y = s·x`` missing p1..p4, transverse to both branches of C6 and to C5 at p0."""
    x, y, _ = MultiPoly.gens(PROJECTIVE_VARS)
    p0 = ctx.point("p0")
    # slopes 0 and 1 are T1 and T3; T2 is vertical
    slopes = [s for s in range(lo, hi + 1) if s not in (0, 1)]
    for s in rng.permutation(slopes):
        T = y - x * int(s)
        if any(ctx.point(n).lies_on(T) for n in ("p1", "p2", "p3", "p4")):
            continue
        if intersection_multiplicity(T, C6, p0) == 2 and intersection_multiplicity(T, C5, p0) == 1:
            return T, int(s)
    raise DegenerateChoice("every slope in range is tangent to C5 or C6 at p0 or meets another center")


def choose_configuration(spec: ScenarioSpec, run: RunConfig) -> tuple[ScenarioContext, dict[str, Any]]:
    lo, hi = spec.parameters.get("p4_range", (-6, 6))
    slo, shi = spec.parameters.get("slope_range", (-5, 5))
    last: DegenerateChoice | None = None
    for attempt in range(run.max_seed_attempts):
        seed = run.seed + attempt
        rng = np.random.default_rng(seed)
        p4 = PlanePoint(int(rng.integers(lo, hi + 1)), int(rng.integers(lo, hi + 1)))
        try:
            base = pgq1_configuration(spec, p4)
            C6 = system_member(base, "C6", seed)
            C5 = system_member(base, "C5", seed)
            T, slope = line_through_p0(base, C5, C6, rng, slo, shi)
        except DegenerateChoice as exc:
            logger.info("seed %d degenerate: %s", seed, exc)
            last = exc
            continue
        ctx = build_context(spec, {"p4": p4}, {"C5": C5, "C6": C6, "T": T})
        return ctx, {"seed": seed, "attempts": attempt + 1, "p4": p4, "slope": slope, "C5": C5, "C6": C6, "T": T}
    raise DegenerateChoice(f"no general configuration in {run.max_seed_attempts} seeds (last: {last})")


def run_pgq1(run: RunConfig | None = None, spec: ScenarioSpec | None = None) -> ScenarioReport:
    run = run or RunConfig()
    spec = spec or load_scenario("pgq1")
    builder = ReportBuilder("pgq1", run.seed)
    holder: dict[str, ScenarioContext] = {}

    def _choice() -> tuple[bool, dict]:
        ctx, values = choose_configuration(spec, run)
        holder["ctx"] = ctx
        return True, values

    if not builder.check("choice", "seeded p4 and line T in general position", ANCHOR, _choice):
        return builder.build()
    ctx = holder["ctx"]

    def _members() -> tuple[bool, dict]:
        out = {}
        for name in ("C5", "C6"):
            conds = system_conditions(ctx, ctx.spec.systems[name])
            out[name] = dict(zip((str(c) for c in conds), verify_member(ctx.curve(name), conds)))
        return all(all(v.values()) for v in out.values()), out

    builder.check("members", "C5 and C6 have every assigned singularity", ANCHOR, _members)

    run_fixture_checks(builder, ctx, run, ANCHOR)

    def _line() -> tuple[bool, dict]:
        p0 = ctx.point("p0")
        i6 = intersection_multiplicity(ctx.curve("T"), ctx.curve("C6"), p0)
        i5 = intersection_multiplicity(ctx.curve("T"), ctx.curve("C5"), p0)
        return (i6, i5) == (2, 1), {"I_p0(T, C6)": i6, "I_p0(T, C5)": i5}

    builder.check("line.T", "T passes through the node of C6 transversally to both branches", ANCHOR, _line)

    out = run_branch_checks(builder, ctx, run, ANCHOR)
    record_assumptions(builder, ctx)
    report = builder.build(out.invariants)
    logger.info("pgq1: %s", "PASS" if report.passed else "FAIL")
    return report
