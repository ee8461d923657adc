"""Plane-curve singularities by iterated blow-up.

Every infinitely near point is examined at the origin of an affine chart with
local coordinates ``(u, v)``.  Blowing up in the direction of slope ``t``
substitutes ``v → u·(v + t)`` and divides by ``u^m``, so the new exceptional
curve is ``u = 0``; the vertical direction substitutes ``u → u·v`` and
divides by ``v^m``, with exceptional curve ``v = 0``.  The local equations of
the exceptional curves through the current point are carried along, which
gives proximity for free: a point is proximate to every centre whose
exceptional curve passes through it.

A point is resolved when the strict transform is smooth there, at most one
exceptional curve passes through it and the branch meets that curve
transversally.  A simple tangent direction that is not the direction of an
exceptional curve already gives such a point, so those leaves are recorded
without extracting the direction; this is what lets a node with conjugate
irrational tangents be resolved over Q(i).  Repeated directions must be
rational over Q(i).

Multiplicity m of a tree node contributes ``m(m − 1)/2`` to the δ-invariant.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from surfcover.algebra.exactfield import GaussianRational
from surfcover.algebra.intersection import Infinite, intersection_multiplicity, local_intersection
from surfcover.algebra.poly import (
    LOCAL_VARS,
    MultiPoly,
    PlanePoint,
    globalize_line,
    localize,
    poly_product,
)
from surfcover.algebra.resultant import (
    gaussian_rational_roots,
    gcd,
    is_squarefree,
    resultant,
    squarefree_decomposition,
    squarefree_part,
    squarefree_roots,
    u_gcd,
)
from surfcover.errors import (
    CommonComponent,
    DepthCapExceeded,
    DirectionNotInTangentCone,
    NonSplitTangentCone,
    NotSquarefree,
    PointNotOnCurve,
)

logger = logging.getLogger(__name__)

DEFAULT_DEPTH_CAP = 16

BinaryForm = MultiPoly


# ═══════════════════════════════════════════════════════════════════════════
# Directions
# ═══════════════════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class Direction:
    """Tangent direction at a chart origin: slope ``t`` (line ``v = t·u``) or vertical.

    ``algebraic`` names a simple direction that is not rational over Q(i)
    by the factor whose root it is.
    """

    slope: GaussianRational | None = None
    algebraic: str | None = None

    @classmethod
    def vertical(cls) -> Direction:
        return cls()

    @classmethod
    def of_slope(cls, t: GaussianRational | int | Fraction) -> Direction:
        return cls(slope=GaussianRational.coerce(t))

    @property
    def is_vertical(self) -> bool:
        return self.slope is None and self.algebraic is None

    @property
    def is_rational(self) -> bool:
        return self.algebraic is None

    def sort_key(self) -> tuple:
        if self.slope is not None:
            return (0, self.slope.sort_key(), "")
        if self.algebraic is None:
            return (1, (), "")
        return (2, (), self.algebraic)

    def __str__(self) -> str:
        if self.slope is not None:
            return f"slope {self.slope}"
        if self.algebraic is None:
            return "vertical"
        return f"root of {self.algebraic}"


SLOPE_ZERO = Direction.of_slope(0)
VERTICAL = Direction.vertical()


def cone_directions(cone: BinaryForm) -> tuple[list[tuple[Direction, int]], list[tuple[list[GaussianRational], int]]]:
    """Rational directions of a binary form with multiplicities, plus unsplit factors.

    The unsplit part is a list of ``(factor in t, multiplicity)`` where ``t`` is
    the slope and each factor has no root in Q(i).
    """
    m = cone.degree()
    f = cone.specialize("u", 1).to_univariate("v") if cone.involves("v") else [cone.specialize("u", 1).constant_term()]
    deg_t = len(f) - 1
    directions: list[tuple[Direction, int]] = []
    unsplit: list[tuple[list[GaussianRational], int]] = []
    if m - deg_t > 0:
        directions.append((VERTICAL, m - deg_t))
    for factor, mult in squarefree_decomposition(f):
        roots, rest = squarefree_roots(factor)
        directions.extend((Direction.of_slope(r), mult) for r in roots)
        if len(rest) > 1:
            unsplit.append((rest, mult))
    directions.sort(key=lambda dm: dm[0].sort_key())
    return directions, unsplit


def cone_is_squarefree(cone: BinaryForm) -> bool:
    """No repeated linear factor, decided with a gcd (no root extraction)."""
    m = cone.degree()
    f = cone.specialize("u", 1)
    deg_t = f.degree_in("v")
    if m - deg_t > 1:
        return False
    if deg_t <= 1:
        return True
    return is_squarefree(f)


def axis_direction(e: MultiPoly) -> Direction:
    """Direction at the origin of a smooth exceptional curve through it."""
    a = e.coefficient((1, 0))
    b = e.coefficient((0, 1))
    if not b:
        return VERTICAL
    return Direction.of_slope(-a / b)


def direction_of_line(L: MultiPoly, p: PlanePoint) -> Direction:
    """Direction at ``p`` of a line through ``p``, in the local chart of ``p``."""
    local = localize(L, p)
    if local.constant_term():
        raise PointNotOnCurve(f"line {L} does not pass through {p}")
    return axis_direction(local)


def line_of_direction(p: PlanePoint, d: Direction, variables: Sequence[str] = ("x", "y", "z")) -> MultiPoly:
    """The line through ``p`` with local direction ``d`` (inverse of :func:`direction_of_line`)."""
    if not d.is_rational:
        raise NonSplitTangentCone(f"direction {d} is not defined over Q(i)")
    if d.is_vertical:
        return globalize_line(1, 0, p, variables)
    return globalize_line(d.slope, -1, p, variables)


# ═══════════════════════════════════════════════════════════════════════════
# Local curves and blow-ups
# ═══════════════════════════════════════════════════════════════════════════

def _divide_by_power(f: MultiPoly, k: int, power: int) -> MultiPoly:
    terms = {}
    for exps, c in f.items():
        if exps[k] < power:
            raise ValueError("exceptional factor does not divide the total transform")
        new = list(exps)
        new[k] -= power
        terms[tuple(new)] = c
    return MultiPoly(f.variables, terms)


def _total_transform(f: MultiPoly, d: Direction) -> tuple[MultiPoly, int]:
    """Substitute the chart of ``d``; returns the polynomial and the index of the exceptional coordinate."""
    u, v = MultiPoly.gens(LOCAL_VARS)
    if d.is_vertical:
        return f.substitute({"u": u * v, "v": v}), 1
    if not d.is_rational:
        raise NonSplitTangentCone(f"cannot blow up in the irrational direction {d}")
    return f.substitute({"u": u, "v": u * (v + d.slope)}), 0


def strict_transform(f: MultiPoly, d: Direction, multiplicity: int | None = None) -> MultiPoly:
    """Strict transform of a local equation in the chart of direction ``d``."""
    m = f.order() if multiplicity is None else multiplicity
    total, k = _total_transform(f, d)
    return _divide_by_power(total, k, m)


def virtual_transform(f: MultiPoly, d: Direction, multiplicity: int) -> MultiPoly:
    """Drop the jets of degree below ``multiplicity`` and divide out the exceptional factor."""
    total, k = _total_transform(f.truncate_below(multiplicity), d)
    return _divide_by_power(total, k, multiplicity)


@dataclass(frozen=True)
class LocalCurve:
    """A curve germ at the origin of a chart, with the exceptional curves through it."""

    equation: MultiPoly
    exceptional: tuple[tuple[int, MultiPoly], ...] = ()
    history: tuple[str, ...] = ()

    @property
    def multiplicity(self) -> int:
        if self.equation.constant_term():
            return 0
        return self.equation.order()

    @property
    def tangent_cone(self) -> BinaryForm:
        return self.equation.lowest_part()

    def exceptional_directions(self) -> dict[Direction, int]:
        return {axis_direction(e): label for label, e in self.exceptional}


def _blow_up(c: LocalCurve, d: Direction, label: int) -> LocalCurve:
    f = strict_transform(c.equation, d, c.multiplicity)
    u, v = MultiPoly.gens(LOCAL_VARS)
    carried: list[tuple[int, MultiPoly]] = []
    for lab, e in c.exceptional:
        e2 = strict_transform(e, d, 1)
        if not e2.constant_term():
            carried.append((lab, e2))
    carried.append((label, v if d.is_vertical else u))
    carried.sort(key=lambda t: t[0])
    return LocalCurve(f, tuple(carried), c.history + (str(d),))


def blow_up_local(c: LocalCurve, direction: Direction, label: int = -1) -> LocalCurve:
    """Strict transform at the infinitely near point in ``direction``."""
    if c.multiplicity == 0:
        raise DirectionNotInTangentCone("the curve does not pass through the origin")
    cone = c.tangent_cone
    if direction.is_vertical:
        on_cone = not cone.evaluate((0, 1))
    elif direction.is_rational:
        on_cone = not cone.evaluate((1, direction.slope))
    else:
        on_cone = False
    if not on_cone:
        raise DirectionNotInTangentCone(f"{direction} is not a tangent direction of {c.equation}")
    return _blow_up(c, direction, label)


# ═══════════════════════════════════════════════════════════════════════════
# Resolution trees
# ═══════════════════════════════════════════════════════════════════════════

@dataclass
class ResolutionNode:
    id: int
    parent: int | None
    multiplicity: int
    direction: Direction | None
    proximity: tuple[int, ...] = ()
    cone_squarefree: bool = True
    children: list[int] = field(default_factory=list)

    @property
    def satellite(self) -> bool:
        return len(self.proximity) >= 2


@dataclass
class ResolutionTree:
    """Infinitely near points of a singularity in breadth-first, direction-sorted order."""

    nodes: list[ResolutionNode]
    point: PlanePoint | None = None

    @property
    def root(self) -> ResolutionNode:
        return self.nodes[0]

    def node(self, node_id: int) -> ResolutionNode:
        return self.nodes[node_id]

    def children(self, node_id: int) -> list[ResolutionNode]:
        return [self.nodes[c] for c in self.nodes[node_id].children]

    def leaves(self) -> list[ResolutionNode]:
        return [n for n in self.nodes if not n.children]

    def depth(self) -> int:
        def d(n: ResolutionNode) -> int:
            return 0 if not n.children else 1 + max(d(self.nodes[c]) for c in n.children)
        return d(self.root)

    def multiplicity_sequences(self) -> list[list[int]]:
        """Root-to-leaf multiplicity lists."""
        out: list[list[int]] = []

        def walk(n: ResolutionNode, acc: list[int]) -> None:
            acc = acc + [n.multiplicity]
            if not n.children:
                out.append(acc)
            for c in n.children:
                walk(self.nodes[c], acc)

        walk(self.root, [])
        return out

    def proximate_to(self, node_id: int) -> list[ResolutionNode]:
        return [n for n in self.nodes if node_id in n.proximity]

    def proximity_holds(self) -> bool:
        """``m_p ≥ Σ m_q`` over the points ``q`` proximate to ``p``, at every node."""
        return all(
            n.multiplicity >= sum(q.multiplicity for q in self.proximate_to(n.id))
            for n in self.nodes
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "point": str(self.point) if self.point is not None else None,
            "nodes": [
                {
                    "id": n.id,
                    "parent": n.parent,
                    "multiplicity": n.multiplicity,
                    "proximity": list(n.proximity),
                    "direction": str(n.direction) if n.direction is not None else None,
                }
                for n in self.nodes
            ],
        }


def delta_invariant(tree: ResolutionTree) -> int:
    return sum(n.multiplicity * (n.multiplicity - 1) // 2 for n in tree.nodes)


def _is_resolved(c: LocalCurve, m: int) -> bool:
    if m != 1 or len(c.exceptional) > 1:
        return False
    if not c.exceptional:
        return True
    return local_intersection(c.equation, c.exceptional[0][1]) == 1


def resolve_local(curve: LocalCurve, depth_cap: int = DEFAULT_DEPTH_CAP, point: PlanePoint | None = None) -> ResolutionTree:
    """Blow up until every branch is smooth and transverse to a single exceptional curve."""
    if curve.multiplicity == 0:
        raise PointNotOnCurve("the curve does not pass through the point")
    nodes: list[ResolutionNode] = []
    # queue items: (curve or None for a known resolved leaf, parent id, direction, depth)
    queue: deque[tuple[LocalCurve | None, int | None, Direction | None, int]] = deque(
        [(curve, None, None, 0)]
    )
    while queue:
        c, parent, direction, depth = queue.popleft()
        nid = len(nodes)
        if c is None:
            nodes.append(ResolutionNode(nid, parent, 1, direction, (parent,)))
            nodes[parent].children.append(nid)
            continue
        m = c.multiplicity
        node = ResolutionNode(nid, parent, m, direction, tuple(lab for lab, _ in c.exceptional))
        nodes.append(node)
        if parent is not None:
            nodes[parent].children.append(nid)
        if _is_resolved(c, m):
            continue
        if depth >= depth_cap:
            raise DepthCapExceeded(f"not resolved after {depth_cap} blow-ups")
        cone = c.tangent_cone
        node.cone_squarefree = cone_is_squarefree(cone)
        directions, unsplit = cone_directions(cone)
        exc_dirs = c.exceptional_directions()
        children: list[tuple[LocalCurve | None, Direction]] = []
        for factor, mult in unsplit:
            if mult > 1:
                raise NonSplitTangentCone(
                    f"repeated tangent direction not defined over Q(i) (factor of degree {len(factor) - 1})"
                )
            text = MultiPoly.from_univariate(factor, "t", ("t",)).to_text()
            for k in range(len(factor) - 1):
                children.append((None, Direction(algebraic=f"{text} #{k + 1}")))
        for d, mult in directions:
            if mult == 1 and d not in exc_dirs:
                children.append((None, d))
            else:
                children.append((_blow_up(c, d, nid), d))
        children.sort(key=lambda cd: cd[1].sort_key())
        for child, d in children:
            queue.append((child, nid, d, depth + 1))
    tree = ResolutionTree(nodes, point)
    logger.debug("resolved %s: sequences %s", point, tree.multiplicity_sequences())
    return tree


def resolve_point(F: MultiPoly, p: PlanePoint, depth_cap: int = DEFAULT_DEPTH_CAP) -> ResolutionTree:
    """Resolution tree of ``F`` at ``p``."""
    local = localize(F, p)
    if local.constant_term():
        raise PointNotOnCurve(f"{p} is not on the curve")
    return resolve_local(LocalCurve(local), depth_cap, p)


# ═══════════════════════════════════════════════════════════════════════════
# Local invariants at plane points
# ═══════════════════════════════════════════════════════════════════════════

def multiplicity_at(F: MultiPoly, p: PlanePoint) -> int:
    local = localize(F, p)
    if not local:
        raise ValueError("the zero polynomial has no multiplicity")
    if local.constant_term():
        return 0
    return local.order()


def tangent_cone_at(F: MultiPoly, p: PlanePoint) -> BinaryForm:
    local = localize(F, p)
    if local.constant_term():
        raise PointNotOnCurve(f"{p} is not on the curve")
    return local.lowest_part()


def chain_multiplicities(F: MultiPoly, p: PlanePoint, directions: Sequence[Direction]) -> list[int]:
    """Multiplicities of the iterated strict transforms of ``F`` at ``p`` and along ``directions``."""
    f = localize(F, p)
    out: list[int] = []
    for k in range(len(directions) + 1):
        m = 0 if f.constant_term() else f.order()
        out.append(m)
        if k == len(directions):
            break
        if m == 0:
            out.extend([0] * (len(directions) - k))
            break
        f = strict_transform(f, directions[k], m)
    return out


def is_tangent_line(F: MultiPoly, p: PlanePoint, L: MultiPoly) -> bool:
    """True iff ``I_p(F, L) ≥ mult_p(F) + 1``."""
    if not p.lies_on(L):
        raise PointNotOnCurve(f"line {L} does not pass through {p}")
    i = intersection_multiplicity(F, L, p)
    if isinstance(i, Infinite):
        return True
    return i >= multiplicity_at(F, p) + 1


# ═══════════════════════════════════════════════════════════════════════════
# Classification
# ═══════════════════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class SingularityClass:
    """Smooth | Node | Tacnode(line) | OrdinaryMultiple(m) | TypePoint(m1, m2) | General(tree)."""

    kind: str
    multiplicity: int
    second_multiplicity: int | None = None
    tangent: MultiPoly | None = None
    tree: ResolutionTree | None = field(default=None, compare=False)

    def __str__(self) -> str:
        if self.kind == "Tacnode":
            return f"Tacnode({self.tangent})" if self.tangent is not None else "Tacnode"
        if self.kind == "OrdinaryMultiple":
            return f"OrdinaryMultiple({self.multiplicity})"
        if self.kind == "TypePoint":
            return f"TypePoint({self.multiplicity},{self.second_multiplicity})"
        if self.kind == "General":
            seqs = self.tree.multiplicity_sequences() if self.tree else []
            return f"General({seqs})"
        return self.kind

    @property
    def delta(self) -> int:
        return delta_invariant(self.tree) if self.tree is not None else 0


def classify_tree(tree: ResolutionTree, tangent: MultiPoly | None = None) -> SingularityClass:
    root = tree.root
    m = root.multiplicity
    if m == 1:
        return SingularityClass("Smooth", 1, tree=tree)
    if root.cone_squarefree:
        kind = "Node" if m == 2 else "OrdinaryMultiple"
        return SingularityClass(kind, m, tree=tree)
    kids = tree.children(root.id)
    if len(kids) == 1 and kids[0].multiplicity >= 2:
        child = kids[0]
        grandkids = tree.children(child.id)
        if child.cone_squarefree and all(not g.children and g.multiplicity == 1 for g in grandkids):
            if (m, child.multiplicity) == (2, 2):
                return SingularityClass("Tacnode", 2, 2, tangent=tangent, tree=tree)
            return SingularityClass("TypePoint", m, child.multiplicity, tree=tree)
    return SingularityClass("General", m, tree=tree)


def classify_singularity(F: MultiPoly, p: PlanePoint, depth_cap: int = DEFAULT_DEPTH_CAP) -> SingularityClass:
    """Classify the singularity of ``F`` at ``p`` from its resolution tree."""
    tree = resolve_point(F, p, depth_cap)
    tangent = None
    root = tree.root
    if root.multiplicity == 2 and len(root.children) == 1:
        d = tree.node(root.children[0]).direction
        if d is not None and d.is_rational:
            line = line_of_direction(p, d)
            tangent = line if len(F.variables) == 3 else line.dehomogenize("z").rename(
                dict(zip(("x", "y"), F.variables))
            ).monic()
    return classify_tree(tree, tangent)


# ═══════════════════════════════════════════════════════════════════════════
# Noether's formula (oracle for intersection multiplicities)
# ═══════════════════════════════════════════════════════════════════════════

def _noether(f: MultiPoly, g: MultiPoly, depth: int, cap: int) -> int:
    if not f or not g:
        raise DepthCapExceeded("common component: the sum does not terminate")
    if f.constant_term() or g.constant_term():
        return 0
    mf, mg = f.order(), g.order()
    total = mf * mg
    common = gcd(f.lowest_part(), g.lowest_part())
    if common.is_constant():
        return total
    if depth >= cap:
        raise DepthCapExceeded(f"common infinitely near points beyond depth {cap}")
    directions, unsplit = cone_directions(common)
    if unsplit:
        raise NonSplitTangentCone("common tangent direction not defined over Q(i)")
    for d, _ in directions:
        total += _noether(strict_transform(f, d, mf), strict_transform(g, d, mg), depth + 1, cap)
    return total


def noether_intersection(F: MultiPoly, G: MultiPoly, p: PlanePoint, depth_cap: int = DEFAULT_DEPTH_CAP) -> int:
    """``Σ m_q(F)·m_q(G)`` over the infinitely near points ``q`` shared by both curves."""
    return _noether(localize(F, p), localize(G, p), 0, depth_cap)


# ═══════════════════════════════════════════════════════════════════════════
# Rational points: common zeros and singular points
# ═══════════════════════════════════════════════════════════════════════════

def _affine_common_zeros(polys: Sequence[MultiPoly]) -> tuple[list[tuple[GaussianRational, GaussianRational]], bool]:
    """Common zeros in Q(i)² of bivariate polynomials in ``(x, y)``."""
    live = [P for P in polys if P]
    if not live:
        raise ValueError("all polynomials vanish identically")
    if any(P.is_constant() for P in live):
        return [], True
    xv, yv = live[0].variables
    if len(live) == 1:
        raise ValueError("one equation does not cut out finitely many points")
    resultants = []
    for a in range(len(live)):
        for b in range(a + 1, len(live)):
            r = resultant(live[a], live[b], yv)
            if r:
                resultants.append(r)
    if not resultants:
        raise CommonComponent("the polynomials share a component")
    g = resultants[0]
    for r in resultants[1:]:
        g = gcd(g, r)
    if g.is_constant():
        return [], True
    xs = gaussian_rational_roots(squarefree_part(g.to_univariate(xv)))
    complete = xs.complete
    points: list[tuple[GaussianRational, GaussianRational]] = []
    for x0 in xs.values():
        fibre: list[GaussianRational] = []
        for P in live:
            f = P.specialize(xv, x0)
            fibre = u_gcd(fibre, f.to_univariate(yv) if f.involves(yv) else [f.constant_term()])
        if not fibre:
            raise CommonComponent(f"the polynomials share the component {xv} = {x0}")
        ys = gaussian_rational_roots(fibre) if len(fibre) > 1 else None
        if ys is None:
            continue
        complete = complete and ys.complete
        points.extend((x0, y0) for y0 in ys.values())
    return points, complete


def rational_common_points(polys: Sequence[MultiPoly]) -> tuple[list[PlanePoint], bool]:
    """Common zeros with coordinates in Q(i); the flag is False if some could not be split."""
    if len(polys[0].variables) == 2:
        pts, complete = _affine_common_zeros(polys)
        return sorted((PlanePoint(x, y) for x, y in pts), key=PlanePoint.sort_key), complete
    if any(not P.is_homogeneous() for P in polys):
        raise ValueError("projective common zeros need homogeneous polynomials")
    xv, yv, zv = polys[0].variables
    affine = [P.dehomogenize(zv) for P in polys]
    pts, complete = _affine_common_zeros(affine)
    found = {PlanePoint(x, y) for x, y in pts}
    # line at infinity
    at_inf = [P.specialize(zv, 0) for P in polys]
    live = [P for P in at_inf if P]
    if not live:
        raise CommonComponent("the line at infinity is a common component")
    if all(not P.evaluate((0, 1, 0)) for P in live):
        found.add(PlanePoint(0, 1, 0))
    fibre: list[GaussianRational] = []
    for P in live:
        f = P.specialize(xv, 1).dehomogenize(zv)
        fibre = u_gcd(fibre, f.to_univariate(yv) if f.involves(yv) else [f.constant_term()])
    if len(fibre) > 1:
        ts = gaussian_rational_roots(fibre)
        complete = complete and ts.complete
        found.update(PlanePoint(1, t, 0) for t in ts.values())
    return sorted(found, key=PlanePoint.sort_key), complete


def curve_is_squarefree(F: MultiPoly) -> bool:
    if len(F.variables) == 2:
        return is_squarefree(F)
    z = F.variables[2]
    if F.order_in(z) > 1:
        return False
    return is_squarefree(F.dehomogenize(z))


def _singular_locus(F: MultiPoly) -> tuple[list[PlanePoint], bool]:
    if F.degree() <= 1:
        return [], True
    if len(F.variables) == 2:
        polys = [F] + [F.differentiate(v) for v in F.variables]
    else:
        polys = [F.differentiate(v) for v in F.variables]
    return rational_common_points(polys)


def rational_singular_points(
    F: MultiPoly | Sequence[MultiPoly],
    depth_cap: int = DEFAULT_DEPTH_CAP,
) -> tuple[list[tuple[PlanePoint, SingularityClass]], bool]:
    """Singular points over Q(i) of a reduced curve, or of a union given as components.

    A union's singular points are those of each component plus the pairwise
    intersections; classification is done on the product.
    """
    components = [F] if isinstance(F, MultiPoly) else list(F)
    for C in components:
        if not curve_is_squarefree(C):
            raise NotSquarefree(f"component has a repeated factor: {C}")
    points: set[PlanePoint] = set()
    complete = True
    for C in components:
        pts, ok = _singular_locus(C)
        points.update(pts)
        complete = complete and ok
    for a in range(len(components)):
        for b in range(a + 1, len(components)):
            pts, ok = rational_common_points([components[a], components[b]])
            points.update(pts)
            complete = complete and ok
    product = poly_product(components, components[0].variables)
    out = [(p, classify_singularity(product, p, depth_cap)) for p in sorted(points, key=PlanePoint.sort_key)]
    logger.debug("singular points: %d found, complete=%s", len(out), complete)
    return out, complete


def intersection_points(F: MultiPoly, G: MultiPoly) -> tuple[list[tuple[PlanePoint, int | Infinite]], bool]:
    """Rational common points of two curves with their local intersection multiplicities."""
    pts, complete = rational_common_points([F, G])
    return [(p, intersection_multiplicity(F, G, p)) for p in pts], complete
