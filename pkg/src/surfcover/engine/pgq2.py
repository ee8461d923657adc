"""The p_g = q = 2 construction: conics of a tangent pencil and a (3,3)-point.

Fixed data are p0 = (0, 0), p1 = (0, 1), p2 = (1, 0), T1: x = 0, T2: y = 0 and
the line H through p1 and p2.  The conics

    C_λ = xy + λ(x + y − 1)²

are tangent to T1 at p1 and to T2 at p2.  The seed picks ``a ≠ b`` and
``u1 ≠ u2``; the lines T3: y = a²x, T4: y = b²x and the members
``λ_k = a²·u_k²`` then meet in eight nodes defined over Q(i).

After the bidouble cover V of the blown-up plane and the contraction of
sixteen (−1)-curves one gets an abelian surface carrying the curve
``R̂ + Ĉ1`` (R the tangent to C1 at p3).  Its only singularity is a
(3,3)-point, and the double cover branched on it has χ = 1, K² = 7.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np

from surfcover.algebra.exactfield import ZERO, GaussianRational
from surfcover.algebra.intersection import intersection_multiplicity
from surfcover.algebra.poly import LOCAL_VARS, PROJECTIVE_VARS, MultiPoly, PlanePoint, localize
from surfcover.config.run import RunConfig
from surfcover.config.scenario import ScenarioSpec, load_scenario
from surfcover.engine.branch import run_branch_checks
from surfcover.engine.common import record_assumptions, run_double_cover_checks, run_fixture_checks
from surfcover.engine.context import ScenarioContext, build_context
from surfcover.engine.report import ReportBuilder
from surfcover.errors import DegenerateChoice
from surfcover.geometry.covers import (
    AmbientType,
    CoverLattice,
    GeneratorSpec,
    Prop1Input,
    SurfaceInvariants,
    cover_gram,
    pairs_evenly,
    prop1_invariants,
    verify_class_identity,
)
from surfcover.geometry.singularity import (
    SingularityClass,
    classify_singularity,
    cone_directions,
    is_tangent_line,
    rational_common_points,
    rational_singular_points,
    strict_transform,
)
from surfcover.models.results import ScenarioReport

logger = logging.getLogger(__name__)

ANCHOR = "pgq2: the abelian bidouble cover and the (3,3)-point"

# (conic, line, names of the two nodes in sort order)
NODE_PAIRS = (
    ("C1", "T3", ("p3", "p4")),
    ("C1", "T4", ("p5", "p6")),
    ("C2", "T3", ("p7", "p8")),
    ("C2", "T4", ("p9", "p10")),
)
NODE_LABELS = tuple(str(j) for j in range(3, 11))


def pencil_conic(lam: int | GaussianRational) -> MultiPoly:
    x, y, z = MultiPoly.gens(PROJECTIVE_VARS)
    return x * y + (x + y - z) ** 2 * lam


@dataclass
class PencilChoice:
    seed: int
    a: int
    b: int
    u: tuple[int, int]

    @property
    def lambdas(self) -> tuple[int, int]:
        return tuple(self.a * self.a * uk * uk for uk in self.u)

    def to_json(self) -> dict:
        return {"seed": self.seed, "a": self.a, "b": self.b, "u": list(self.u), "lambda": list(self.lambdas)}


def pgq2_configuration(spec: ScenarioSpec, choice: PencilChoice) -> ScenarioContext:
    """Lines, conics, the eight nodes and the tangent R for one parameter choice."""
    a, b = choice.a, choice.b
    u1, u2 = choice.u
    if not a or not b or a * a == b * b:
        raise DegenerateChoice(f"T3 and T4 need distinct nonzero slopes, got a²={a * a}, b²={b * b}")
    if not u1 or not u2 or u1 * u1 == u2 * u2:
        raise DegenerateChoice(f"C1 and C2 need distinct pencil members, got u={choice.u}")

    x, y, _ = MultiPoly.gens(PROJECTIVE_VARS)
    curves = {
        "T3": y - x * (a * a),
        "T4": y - x * (b * b),
        "C1": pencil_conic(choice.lambdas[0]),
        "C2": pencil_conic(choice.lambdas[1]),
    }
    points: dict[str, PlanePoint] = {}
    for conic, line, names in NODE_PAIRS:
        pts, complete = rational_common_points([curves[conic], curves[line]])
        if not complete or len(pts) != 2:
            raise DegenerateChoice(f"{conic} ∩ {line} is not two points over Q(i)")
        points.update(zip(names, pts))
    fixed = [PlanePoint.from_text(t) for t in spec.points.values()]
    every = list(points.values()) + fixed
    if len(set(every)) != len(every) or not all(p.is_affine() for p in every):
        raise DegenerateChoice("the nodes are not distinct affine points away from p0, p1, p2")

    if "R" not in spec.curves:
        p3 = points["p3"]
        grad = [curves["C1"].differentiate(v).evaluate(p3.normalized) for v in PROJECTIVE_VARS]
        X = MultiPoly.gens(PROJECTIVE_VARS)
        curves["R"] = (X[0] * grad[0] + X[1] * grad[1] + X[2] * grad[2]).monic()

    ctx = build_context(spec, points, curves)
    if "R" not in spec.curves and ctx.curve_class("R") != ctx.config.parse_class("T - E3"):
        raise DegenerateChoice(f"the tangent at p3 meets another center: class {ctx.curve_class('R')}")
    return ctx


def choose_configuration(spec: ScenarioSpec, run: RunConfig) -> tuple[ScenarioContext, PencilChoice]:
    lo, hi = spec.parameters.get("slope_root_range", (1, 4))
    plo, phi = spec.parameters.get("pencil_range", (1, 4))
    last: DegenerateChoice | None = None
    for attempt in range(run.max_seed_attempts):
        seed = run.seed + attempt
        rng = np.random.default_rng(seed)
        a, b = (int(v) for v in rng.choice(np.arange(lo, hi + 1), size=2, replace=False))
        u = tuple(int(v) for v in rng.choice(np.arange(plo, phi + 1), size=2, replace=False))
        choice = PencilChoice(seed, a, b, u)
        try:
            return pgq2_configuration(spec, choice), choice
        except DegenerateChoice as exc:
            logger.info("seed %d degenerate: %s", seed, exc)
            last = exc
    raise DegenerateChoice(f"no general configuration in {run.max_seed_attempts} seeds (last: {last})")


# ═══════════════════════════════════════════════════════════════════════════
# The (3,3)-point
# ═══════════════════════════════════════════════════════════════════════════

@dataclass
class TriplePointModel:
    """Local picture of ``R̂ + Ĉ1`` where R and C1 are tangent.

    On the blow-up, R', C1' and E3 pass through one point with local linear
    forms ``ℓ_R = α·ℓ_E + β·ℓ_C``.  The cover ramified along E3 and C1 is
    ``e = s², c = t²``; contracting the reduced E3 (s = 0) turns
    ``αs² + βt²`` and ``t`` into ``t(βt² + αs⁴)``.
    """

    alpha: GaussianRational | None = None
    beta: GaussianRational | None = None
    model: MultiPoly | None = None
    singularity: SingularityClass | None = None
    contact: int | None = None
    reason: str = ""

    @property
    def is_33(self) -> bool:
        s = self.singularity
        return s is not None and s.kind == "TypePoint" and (s.multiplicity, s.second_multiplicity) == (3, 3)

    def to_json(self) -> dict:
        return {
            "alpha": str(self.alpha) if self.alpha is not None else None,
            "beta": str(self.beta) if self.beta is not None else None,
            "model": str(self.model) if self.model is not None else None,
            "singularity": str(self.singularity) if self.singularity is not None else None,
            "contact": self.contact,
            "reason": self.reason,
        }


def _linear_coefficients(f: MultiPoly) -> tuple[GaussianRational, GaussianRational]:
    lin = f.homogeneous_part(1)
    return lin.coefficient((1, 0)), lin.coefficient((0, 1))


def triple_point_model(C: MultiPoly, R: MultiPoly, p: PlanePoint, depth_cap: int = 16) -> TriplePointModel:
    fC, fR = localize(C, p), localize(R, p)
    if fC.constant_term() or fR.constant_term():
        return TriplePointModel(reason=f"C1 and R do not both pass through {p}")
    directions, _ = cone_directions(fC.lowest_part())
    if fC.order() != 1 or len(directions) != 1:
        return TriplePointModel(reason=f"C1 is singular at {p}")
    d = directions[0][0]
    c = strict_transform(fC, d)
    r = strict_transform(fR, d)
    if r.constant_term():
        return TriplePointModel(reason="R is not tangent to C1: R' misses the point where C1' meets E3")
    u, v = MultiPoly.gens(LOCAL_VARS)
    e = v if d.is_vertical else u
    e1, e2 = _linear_coefficients(e)
    c1, c2 = _linear_coefficients(c)
    r1, r2 = _linear_coefficients(r)
    det = e1 * c2 - e2 * c1
    if not det:
        return TriplePointModel(reason="C1' is tangent to E3")
    alpha = (r1 * c2 - r2 * c1) / det
    beta = (e1 * r2 - e2 * r1) / det
    if alpha == ZERO or beta == ZERO:
        return TriplePointModel(alpha, beta, reason="R' is tangent to C1' or to E3 on the blow-up")
    s, t = MultiPoly.gens(("x", "y"))
    quartic = t * t * beta + s ** 4 * alpha
    model = t * quartic
    origin = PlanePoint(0, 0)
    return TriplePointModel(
        alpha, beta, model,
        classify_singularity(model, origin, depth_cap),
        int(intersection_multiplicity(t, quartic, origin)),
    )


# ═══════════════════════════════════════════════════════════════════════════
# Cover lattices
# ═══════════════════════════════════════════════════════════════════════════

XI_T = ("xi1", "xi2")
XI_E = ("xi3", "xi4")


def contracted_labels() -> list[str]:
    out = [f"{xi}_{i}" for i in (1, 2) for xi in XI_T + XI_E]
    out.extend(f"E{j}bar" for j in NODE_LABELS)
    return out


def bidouble_lattice(ctx: ScenarioContext) -> CoverLattice:
    """Degree-4 lattice on V: pullbacks, reduced branch curves and the split (−2)-curves of D1."""
    cfg = ctx.config
    gens = [
        GeneratorSpec.pullback("R'''", ctx.curve_class("R")),
        GeneratorSpec.pullback("H'", ctx.curve_class("H")),
        GeneratorSpec.pullback("pi*E1'", cfg.exceptional_strict("1'")),
        GeneratorSpec.pullback("pi*E2'", cfg.exceptional_strict("2'")),
        GeneratorSpec.pullback("pi*T", cfg.T()),
        GeneratorSpec.pullback("pi*D1", ctx.D("D1")),
        GeneratorSpec.reduced("C1bar", ctx.curve_class("C1")),
    ]
    gens.extend(GeneratorSpec.reduced(f"E{j}bar", cfg.exceptional_strict(j)) for j in NODE_LABELS)
    for i in (1, 2):
        line = ctx.curve_class(f"T{i}")
        exc = cfg.exceptional_strict(str(i))
        # branch (−2)-curves of D1 split in two; each piece is ramified
        gens.extend(GeneratorSpec.split(f"{xi}_{i}", line, f"T{i}", k + 1, 2, 2) for k, xi in enumerate(XI_T))
        gens.extend(GeneratorSpec.split(f"{xi}_{i}", exc, f"E{i}", k + 1, 2, 2) for k, xi in enumerate(XI_E))
    return cover_gram(gens, 4, contracted=contracted_labels())


def kummer_lattice(ctx: ScenarioContext) -> CoverLattice:
    """Degree-2 lattice on X1 (branched on D2 + D3 ≡ 2·L1) over the components of D1."""
    branch = ctx.L("L1") * 2
    gens: list[GeneratorSpec] = []
    for comp in ctx.components("D1"):
        if comp.cls.dot(branch) == 0:
            # an unbranched double cover of P¹ splits
            gens.extend(GeneratorSpec.split(f"{comp.name}.{k}", comp.cls, comp.name, k, 2, 1) for k in (1, 2))
        else:
            gens.append(GeneratorSpec.pullback(comp.name, comp.cls))
    return cover_gram(gens, 2)


def branch_class() -> dict[str, int]:
    return {"R'''": 1, "C1bar": 1}


def pullback_identity_rhs() -> dict[str, int]:
    """``π*(R + H) = R''' + H' + 2Ē3 + Σ(π*E_i' + 2ξ3 + 2ξ4)``."""
    rhs = {"R'''": 1, "H'": 1, "E3bar": 2, "pi*E1'": 1, "pi*E2'": 1}
    for i in (1, 2):
        rhs.update({f"{xi}_{i}": 2 for xi in XI_E})
    return rhs


# ═══════════════════════════════════════════════════════════════════════════
# Runner
# ═══════════════════════════════════════════════════════════════════════════

def run_pgq2(run: RunConfig | None = None, spec: ScenarioSpec | None = None) -> ScenarioReport:
    run = run or RunConfig()
    spec = spec or load_scenario("pgq2")
    builder = ReportBuilder("pgq2", run.seed)
    state: dict[str, Any] = {}

    def _choice() -> tuple[bool, dict]:
        ctx, choice = choose_configuration(spec, run)
        state["ctx"] = ctx
        points = {f"p{j}": ctx.point(f"p{j}") for j in range(3, 11)}
        return True, {**choice.to_json(), "nodes": points, "R": ctx.curve("R")}

    if not builder.check("choice", "seeded lines T3, T4 and pencil members C1, C2", ANCHOR, _choice):
        return builder.build()
    ctx: ScenarioContext = state["ctx"]

    builder.check("configuration", "incidences of the fixed points, lines and conics", ANCHOR,
                  lambda: _configuration(ctx))
    run_fixture_checks(builder, ctx, run, ANCHOR)
    out = run_branch_checks(builder, ctx, run, ANCHOR)

    def _tangent() -> tuple[bool, dict]:
        R, C1, p3 = ctx.curve("R"), ctx.curve("C1"), ctx.point("p3")
        tangent = p3.lies_on(R) and is_tangent_line(C1, p3, R)
        cls = ctx.curve_class("R")
        return tangent and cls == ctx.config.parse_class("T - E3"), {"R": R, "tangent": tangent, "class": cls}

    builder.check("tangent_line", "R is tangent to C1 at p3 and meets no other center", ANCHOR, _tangent)

    def _model() -> tuple[bool, dict]:
        m = triple_point_model(ctx.curve("C1"), ctx.curve("R"), ctx.point("p3"), run.depth_cap)
        state["model"] = m
        return m.is_33, m.to_json()

    builder.check("point_33", "R̂ + Ĉ1 has a (3,3)-point over p3", ANCHOR, _model)

    def _lattice() -> tuple[bool, dict]:
        lat = bidouble_lattice(ctx)
        state["lattice"] = lat
        R2 = lat.contracted_self_intersection("R'''")
        C2 = lat.contracted_self_intersection("C1bar")
        RC = lat.contracted_pair("R'''", "C1bar")
        B2 = lat.contracted_self_intersection(branch_class())
        ok = (R2, C2, RC, B2) == (8, 0, 4, 16) and lat.is_symmetric()
        return ok, {
            "R^2": R2, "C1^2": C2, "R.C1": RC, "(R+C1)^2": B2,
            "R record": lat.contraction_record("R'''"),
            "C1 record": lat.contraction_record("C1bar"),
        }

    builder.check("lattice.squares", "R̂² = 8, Ĉ1² = 0, R̂·Ĉ1 = 4 and (R̂ + Ĉ1)² = 16", ANCHOR, _lattice)

    def _contracted() -> tuple[bool, dict]:
        lat = state.get("lattice") or bidouble_lattice(ctx)
        n = len(lat.contracted)
        return n == spec.expected.contracted, {"contracted": lat.contracted, "count": n}

    builder.check("lattice.contracted", "sixteen disjoint (−1)-curves over D1", ANCHOR, _contracted)

    def _identity() -> tuple[bool, dict]:
        lat = state.get("lattice") or bidouble_lattice(ctx)
        rhs = pullback_identity_rhs()
        return verify_class_identity(lat, {"pi*T": 2}, rhs), {"lhs": {"pi*T": 2}, "rhs": rhs}

    builder.check("lattice.identity", "π*(R + H) = R''' + H' + 2Ē3 + Σ(π*E_i' + 2ξ3 + 2ξ4)", ANCHOR, _identity)

    def _d1() -> tuple[bool, dict]:
        lat = state.get("lattice") or bidouble_lattice(ctx)
        rhs = {c: 2 for c in lat.contracted}
        return verify_class_identity(lat, {"pi*D1": 1}, rhs), {"rhs": rhs}

    builder.check("lattice.D1", "π*D1 is twice the sum of the contracted curves", ANCHOR, _d1)

    def _even() -> tuple[bool, dict]:
        lat = state.get("lattice") or bidouble_lattice(ctx)
        odd = pairs_evenly(lat, branch_class(), contracted=True)
        return not odd, {"odd_pairings": odd}

    builder.check("lattice.even", "R̂ + Ĉ1 pairs evenly with every declared class", ANCHOR, _even)

    def _kummer() -> tuple[bool, dict]:
        lat = kummer_lattice(ctx)
        squares = {g: lat.square(g) for g in lat.labels}
        meeting = {f"{a}·{b}": lat.pair(a, b) for a in lat.labels for b in lat.labels if a < b and lat.pair(a, b)}
        ok = len(lat.labels) == 16 and all(s == -2 for s in squares.values()) and not meeting
        return ok, {"curves": len(lat.labels), "squares": squares, "meeting": meeting}

    builder.check("kummer.curves", "the preimage of D1 in X1 is sixteen disjoint (−2)-curves", ANCHOR, _kummer)

    run_double_cover_checks(builder, ctx, run)

    def _prop1() -> tuple[bool, dict]:
        lat = state.get("lattice") or bidouble_lattice(ctx)
        model: TriplePointModel | None = state.get("model")
        B2 = lat.contracted_self_intersection(branch_class())
        contact = model.contact if model is not None and model.is_33 else 0
        data = Prop1Input(
            ambient=AmbientType.ABELIAN,
            chi_X=0,
            n=0,
            L_sq=B2 // 4,
            branch_square=B2,
            branch_even=not pairs_evenly(lat, branch_class(), contracted=True),
            points_33=1 if model is not None and model.is_33 else 0,
            other_singularities=max(lat.contracted_pair("R'''", "C1bar") - contact, 0),
        )
        inv = prop1_invariants(data)
        state["final"] = inv
        return (inv.chi, inv.Ksq) == (1, 7), {"input": data.model_dump(mode="json"), "chi": inv.chi, "Ksq": inv.Ksq}

    builder.check("prop1", "double cover of the abelian surface branched on R̂ + Ĉ1: χ = 1, K² = 7", ANCHOR, _prop1)

    record_assumptions(builder, ctx)
    final: SurfaceInvariants | None = state.get("final")
    if final is not None:
        # p_g = q = 2 rests on the cited irregularity bound
        summary = final.model_copy(update={"pg": 2})
    else:
        summary = out.invariants
    report = builder.build(summary)
    logger.info("pgq2: %s", "PASS" if report.passed else "FAIL")
    return report


def _configuration(ctx: ScenarioContext) -> tuple[bool, dict]:
    p0, p1, p2 = ctx.point("p0"), ctx.point("p1"), ctx.point("p2")
    values: dict[str, Any] = {
        "p1 on T1": p1.lies_on(ctx.curve("T1")),
        "p2 on T2": p2.lies_on(ctx.curve("T2")),
        "p0 on T3, T4": p0.lies_on(ctx.curve("T3")) and p0.lies_on(ctx.curve("T4")),
    }
    for name in ("C1", "C2"):
        sing, complete = rational_singular_points(ctx.curve(name))
        values[f"{name} smooth"] = complete and not sing
        values[f"p0 off {name}"] = not p0.lies_on(ctx.curve(name))
        on_h, _ = rational_common_points([ctx.curve(name), ctx.curve("H")])
        values[f"{name} ∩ H"] = set(on_h) == {p1, p2}
    return all(values.values()), values
