"""The p_g = q = 0 construction: curves F6, F7 over Q(i) and ten blown-up points.

Everything is fixed by the fixture; the runner adds the conic through
p1..p5, whose non-tangency to T1 is what kills ``h⁰(K + L1)``.
"""

from __future__ import annotations

import logging

from surfcover.config.run import RunConfig
from surfcover.config.scenario import ScenarioSpec, load_scenario
from surfcover.engine.branch import run_branch_checks
from surfcover.engine.common import record_assumptions, run_double_cover_checks, run_fixture_checks
from surfcover.engine.context import ScenarioContext, build_context
from surfcover.engine.report import ReportBuilder
from surfcover.errors import EmptySystem, SurfcoverError
from surfcover.geometry.linsys import find_member, linear_system, point_condition, system_dimension
from surfcover.models.results import ScenarioReport

logger = logging.getLogger(__name__)

ANCHOR = "pgq0: curves C6, C7 and the bidouble cover"

# listing order of the six points in the curve file: p[1]..p[6] are p0..p5
LISTING_NAMES = ("p0", "p1", "p2", "p3", "p4", "p5")


def conic_through(ctx: ScenarioContext, names: tuple[str, ...] = ("p1", "p2", "p3", "p4", "p5")):
    result = linear_system(2, [point_condition(ctx.point(n)) for n in names])
    if result.dimension != 0:
        raise EmptySystem(f"expected a unique conic through {', '.join(names)}, got dimension {result.dimension}")
    return find_member(result)


def run_pgq0(run: RunConfig | None = None, spec: ScenarioSpec | None = None) -> ScenarioReport:
    run = run or RunConfig()
    spec = spec or load_scenario("pgq0")
    builder = ReportBuilder("pgq0", run.seed)

    holder: dict[str, ScenarioContext] = {}

    def _curves() -> tuple[bool, dict]:
        ctx = build_context(spec)
        Q = conic_through(ctx)
        holder["ctx"] = build_context(spec, extra_curves={"Q": Q})
        F6, F7 = ctx.curve("F6"), ctx.curve("F7")
        return (F6.degree(), F7.degree()) == (6, 7), {
            "degrees": {"F6": F6.degree(), "F7": F7.degree()},
            "terms": {"F6": len(F6), "F7": len(F7)},
            "conic": Q,
            "listing_points": dict(zip((f"p[{k + 1}]" for k in range(6)), LISTING_NAMES)),
        }

    if not builder.check("curves", "F6 and F7 read from their listings; conic through p1..p5", ANCHOR, _curves):
        return builder.build()
    ctx = holder["ctx"]

    run_fixture_checks(builder, ctx, run, ANCHOR)

    builder.check(
        "dimension.unconstrained", "plane curves of degree 7 form a system of dimension 35", ANCHOR,
        lambda: (system_dimension(7, []) == 35, {"dimension": system_dimension(7, [])}),
    )

    out = run_branch_checks(builder, ctx, run, ANCHOR)

    def _h0() -> tuple[bool, dict]:
        if not out.h0s:
            raise SurfcoverError("h0 terms were not computed")
        return out.h0s[0] == 0, {"h0(K+L1)": out.h0s[0], "conic": ctx.curve("Q")}

    builder.check(
        "h0.K+L1", "h⁰(K + L1) = 0 because the conic through p1..p5 is not tangent to T1", ANCHOR, _h0,
    )

    run_double_cover_checks(builder, ctx, run)
    record_assumptions(builder, ctx)
    report = builder.build(out.invariants)
    logger.info("pgq0: %s", "PASS" if report.passed else "FAIL")
    return report
