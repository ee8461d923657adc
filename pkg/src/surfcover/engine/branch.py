"""Checks every bidouble construction shares.

Given a context whose branch divisors are declared component by component:

* component classes against the printed ones, and declared squares;
* each ``D_g`` is the sum of its components, which are pairwise disjoint;
* ``L_g + D_g ≡ L_j + L_k`` and ``2L_g ≡ D_j + D_k``;
* the printed canonical identities (``K + L_g``, ``2K + ΣL``);
* transversality of the supports on the blow-up, and no triple points;
* χ, p_g and K² of the cover and of its minimal model.

Transversality on the blow-up is decided from the plane and from local
pictures at the centers:

* two strict transforms of different ``D``'s: their class product must
  equal the number of transverse residual points of the plane curves, so
  they meet only off the exceptional curves and transversally;
* a strict transform against an exceptional component: its tangent
  directions at the center, less later centers and other exceptional
  curves, are simple and as many as the class product;
* two exceptional components meet at most once.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations

from surfcover.config.run import RunConfig
from surfcover.engine.context import Component, ScenarioContext, class_of_components, exceptional_crossings
from surfcover.engine.report import ReportBuilder
from surfcover.engine.transversality import TransversalityCertificate, branch_certificate
from surfcover.errors import BranchContractViolated
from surfcover.geometry.covers import SurfaceInvariants, bidouble_invariants, minimal_model_Ksq
from surfcover.geometry.picard import check_bidouble_data

logger = logging.getLogger(__name__)

BIDOUBLE_ANCHOR = "bidouble cover formulas: χ, p_g and K² from (D_g, L_g)"


@dataclass
class BranchOutcome:
    components: dict[str, list[Component]] = field(default_factory=dict)
    certificate: TransversalityCertificate | None = None
    invariants: SurfaceInvariants | None = None
    h0s: list[int] = field(default_factory=list)


def run_branch_checks(builder: ReportBuilder, ctx: ScenarioContext, run: RunConfig, anchor: str) -> BranchOutcome:
    out = BranchOutcome()
    names = ctx.branch_names()
    cfg = ctx.config

    # ── components and classes ──────────────────────────────────────────────
    for g in names:
        comps: list[Component] = []

        def _components(g: str = g) -> tuple[bool, dict]:
            comps.extend(ctx.components(g))
            bad = [
                c.name for c in comps
                if (c.printed is not None and c.printed != c.cls)
                or (c.square is not None and c.square != c.cls.square)
            ]
            return not bad, {"components": comps, "mismatched": bad}

        builder.check(f"components.{g}", f"components of {g}: classes and self-intersections", anchor, _components)
        out.components[g] = comps

        builder.check(
            f"classes.{g}", f"{g} is the sum of its components", anchor,
            lambda g=g, comps=comps: (
                class_of_components(comps, cfg) == ctx.D(g),
                {"sum": class_of_components(comps, cfg), "printed": ctx.D(g)},
            ),
        )

        def _disjoint(comps: list[Component] = comps) -> tuple[bool, dict]:
            meeting = {f"{a.name}·{b.name}": a.cls.dot(b.cls) for a, b in combinations(comps, 2) if a.cls.dot(b.cls)}
            return not meeting, {"meeting": meeting}

        builder.check(f"disjoint.{g}", f"components of {g} are pairwise disjoint", anchor, _disjoint)

    # ── bidouble data and printed identities ────────────────────────────────
    def _bidouble() -> tuple[bool, dict]:
        report = check_bidouble_data([ctx.D(g) for g in names], [ctx.L(f"L{g[1:]}") for g in names])
        return report.holds, {c.name: {"holds": c.holds, "lhs": c.lhs, "rhs": c.rhs} for c in report.checks}

    builder.check("bidouble_data", "L_g + D_g ≡ L_j + L_k and 2L_g ≡ D_j + D_k", BIDOUBLE_ANCHOR, _bidouble)

    for ident in ctx.spec.identities:
        lhs_text = ident.lhs.replace(" ", "")
        builder.check(
            f"identity.{lhs_text}", f"{ident.lhs} ≡ printed class", ident.anchor or anchor,
            lambda ident=ident: (
                ctx.evaluate(ident.lhs) == ctx.resolve_class(ident.rhs),
                {"computed": ctx.evaluate(ident.lhs), "printed": ctx.resolve_class(ident.rhs)},
            ),
        )

    # ── transversality ──────────────────────────────────────────────────────
    def _plane() -> tuple[bool, dict]:
        supports = [ctx.support_curves(g) for g in names]
        cert = branch_certificate(supports, ctx.proper_centers(), run.seed, run.certificate_retries)
        out.certificate = cert
        ok = cert.certified and cert.triple_free is not False
        return ok, cert.to_json()

    builder.check(
        "transversality.plane",
        "strict transforms of different D's meet transversally off the centers, no triple points",
        anchor, _plane,
    )

    builder.check(
        "transversality.components",
        "component intersections on the blow-up are transverse and counted by the class products",
        anchor, lambda: _component_transversality(ctx, out),
    )

    # ── invariants ──────────────────────────────────────────────────────────
    expected = ctx.spec.expected

    def _invariants() -> tuple[bool, dict]:
        inv, h0s = bidouble_invariants(
            [ctx.D(g) for g in names],
            [ctx.L(f"L{g[1:]}") for g in names],
            cfg,
            ctx.catalog(),
            unloading_cap=run.unloading_cap,
        )
        inv = inv.model_copy(update={"Ksq_min": minimal_model_Ksq(inv.Ksq, expected.contracted)})
        out.invariants, out.h0s = inv, h0s
        ok = (inv.chi, inv.pg, inv.Ksq) == (expected.chi, expected.pg, expected.Ksq)
        return ok, {
            "chi": inv.chi,
            "pg": inv.pg,
            "Ksq": inv.Ksq,
            "h0(K+L)": h0s,
            "L(K+L)": [ctx.L(f"L{g[1:]}").dot(ctx.K + ctx.L(f"L{g[1:]}")) for g in names],
            "expected": expected.model_dump(),
        }

    builder.check("invariants", "χ(O_V), p_g(V) and K_V² of the bidouble cover", BIDOUBLE_ANCHOR, _invariants)

    def _minimal() -> tuple[bool, dict]:
        if out.invariants is None:
            raise BranchContractViolated("cover invariants were not computed")
        return out.invariants.Ksq_min == expected.Ksq_min, {
            "Ksq": out.invariants.Ksq,
            "contracted": expected.contracted,
            "Ksq_min": out.invariants.Ksq_min,
        }

    builder.check("minimal_model", "K² after contracting the (−1)-curves over the T_i", anchor, _minimal)
    return out


def _component_transversality(ctx: ScenarioContext, out: BranchOutcome) -> tuple[bool, dict]:
    cfg = ctx.config
    cert = out.certificate
    rows: list[dict] = []
    ok = True
    for g, j in combinations(ctx.branch_names(), 2):
        for a in out.components.get(g, []):
            for b in out.components.get(j, []):
                product = a.cls.dot(b.cls)
                row: dict = {"pair": f"{a.name}·{b.name}", "product": product}
                if a.kind == "curve" and b.kind == "curve":
                    if cert is None or not cert.certified:
                        row["count"] = None
                        good = False
                    else:
                        row["count"] = cert.pair_counts.get((a.name, b.name), 0)
                        good = row["count"] == product
                elif a.kind == "exceptional" and b.kind == "exceptional":
                    good = product in (0, 1)
                else:
                    curve, exc = (a, b) if a.kind == "curve" else (b, a)
                    crossing = exceptional_crossings(ctx.curve(curve.source), cfg, exc.source)
                    row["count"] = crossing.count
                    row["simple"] = crossing.simple
                    good = crossing.simple and crossing.count == product
                row["ok"] = good
                ok = ok and good
                rows.append(row)
    return ok, {"pairs": rows}
