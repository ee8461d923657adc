"""Tests for blow-ups, resolution trees and singularity classification.

Covers:
  - directions of lines and tangent cones, strict transforms
  - resolution trees: multiplicity sequences, delta, proximity, JSON form
  - classify_singularity: Smooth, Node, Tacnode(line), OrdinaryMultiple, TypePoint, General
  - depth cap and non-split repeated tangents
  - tangency tests, Noether's sum against the direct intersection number
  - rational singular points of curves and unions
"""

from __future__ import annotations

import pytest

from surfcover.algebra.exactfield import I
from surfcover.algebra.intersection import intersection_multiplicity
from surfcover.algebra.parser import parse_poly
from surfcover.algebra.poly import LOCAL_VARS, PlanePoint
from surfcover.errors import DepthCapExceeded, DirectionNotInTangentCone, NonSplitTangentCone, PointNotOnCurve
from surfcover.geometry.singularity import (
    SLOPE_ZERO,
    VERTICAL,
    Direction,
    LocalCurve,
    blow_up_local,
    chain_multiplicities,
    classify_singularity,
    cone_directions,
    delta_invariant,
    direction_of_line,
    intersection_points,
    is_tangent_line,
    line_of_direction,
    multiplicity_at,
    noether_intersection,
    rational_common_points,
    rational_singular_points,
    resolve_point,
    strict_transform,
)

O = PlanePoint(0, 0, 1)
NODAL_CUBIC = "y^2*z - x^3 - x^2*z"
TACNODE = "y^2*z^2 - x^4"
TRIPLE_33 = "y^3*z^2 + x^4*y"


# ═══════════════════════════════════════════════════════════════════════════
# Directions and transforms
# ═══════════════════════════════════════════════════════════════════════════

class TestDirections:
    """Tangent directions and lines."""

    def test_direction_of_line(self):
        assert direction_of_line(parse_poly("y"), O) == SLOPE_ZERO
        assert direction_of_line(parse_poly("x"), O) == VERTICAL
        assert direction_of_line(parse_poly("y - i*x"), O) == Direction.of_slope(I)

    def test_line_must_pass_through_point(self):
        with pytest.raises(PointNotOnCurve):
            direction_of_line(parse_poly("y - z"), O)

    def test_line_of_direction_inverts(self):
        p = PlanePoint(1, 2)
        for d in (SLOPE_ZERO, VERTICAL, Direction.of_slope(3)):
            L = line_of_direction(p, d)
            assert p.lies_on(L)
            assert direction_of_line(L, p) == d

    def test_irrational_direction_has_no_line(self):
        with pytest.raises(NonSplitTangentCone):
            line_of_direction(O, Direction(algebraic="t^2-2 #1"))

    def test_cone_directions(self):
        cone = parse_poly("v^2 - u^2", LOCAL_VARS)
        directions, unsplit = cone_directions(cone)
        assert [d for d, _ in directions] == [Direction.of_slope(-1), Direction.of_slope(1)]
        assert unsplit == []

    def test_cone_with_vertical_and_unsplit(self):
        cone = parse_poly("u*(v^2 - 2*u^2)", LOCAL_VARS)
        directions, unsplit = cone_directions(cone)
        assert directions == [(VERTICAL, 1)]
        assert len(unsplit) == 1
        cone = parse_poly("u^2*v", LOCAL_VARS)
        directions, _ = cone_directions(cone)
        assert directions == [(SLOPE_ZERO, 1), (VERTICAL, 2)]

    def test_strict_transform(self):
        f = parse_poly("v - u^2", LOCAL_VARS)
        assert strict_transform(f, SLOPE_ZERO) == parse_poly("v - u", LOCAL_VARS)

    def test_blow_up_outside_cone_rejected(self):
        curve = LocalCurve(parse_poly("v - u^2", LOCAL_VARS))
        with pytest.raises(DirectionNotInTangentCone):
            blow_up_local(curve, VERTICAL)

    def test_chain_multiplicities(self):
        assert chain_multiplicities(parse_poly(TACNODE), O, [SLOPE_ZERO]) == [2, 2]


# ═══════════════════════════════════════════════════════════════════════════
# Resolution and classification
# ═══════════════════════════════════════════════════════════════════════════

class TestResolution:
    """Resolution trees."""

    def test_node(self):
        tree = resolve_point(parse_poly(NODAL_CUBIC), O)
        assert tree.multiplicity_sequences() == [[2, 1], [2, 1]]
        assert delta_invariant(tree) == 1

    def test_cusp(self):
        tree = resolve_point(parse_poly("y^2*z - x^3"), O)
        assert tree.multiplicity_sequences() == [[2, 1, 1, 1]]
        assert delta_invariant(tree) == 1
        assert tree.proximity_holds()

    def test_tacnode(self):
        tree = resolve_point(parse_poly(TACNODE), O)
        assert tree.multiplicity_sequences() == [[2, 2, 1], [2, 2, 1]]
        assert delta_invariant(tree) == 2

    def test_json(self):
        data = resolve_point(parse_poly(TACNODE), O).to_json()
        assert data["point"] == "(0:0:1)"
        assert data["nodes"][0]["multiplicity"] == 2
        assert data["nodes"][0]["parent"] is None
        assert data["nodes"][1]["direction"] == "slope 0"

    def test_point_off_curve(self):
        with pytest.raises(PointNotOnCurve):
            resolve_point(parse_poly("x - z"), O)

    def test_depth_cap(self):
        with pytest.raises(DepthCapExceeded):
            resolve_point(parse_poly("y^2*z^18 - x^20"), O, depth_cap=3)

    def test_repeated_irrational_tangent(self):
        with pytest.raises(NonSplitTangentCone):
            resolve_point(parse_poly("(y^2 - 2*x^2)^2*z + x^5"), O)


class TestClassification:
    """classify_singularity."""

    def test_smooth(self):
        cls = classify_singularity(parse_poly("y*z - x^2"), O)
        assert str(cls) == "Smooth"
        assert cls.delta == 0

    def test_node(self):
        cls = classify_singularity(parse_poly(NODAL_CUBIC), O)
        assert str(cls) == "Node"
        assert cls.delta == 1

    def test_node_with_irrational_tangents(self):
        assert str(classify_singularity(parse_poly("y^2*z - 2*x^2*z + x^3"), O)) == "Node"

    def test_tacnode_records_tangent(self):
        cls = classify_singularity(parse_poly(TACNODE), O)
        assert cls.kind == "Tacnode"
        assert cls.tangent == parse_poly("y")
        assert str(cls) == "Tacnode(y)"

    def test_ordinary_triple_point(self):
        cls = classify_singularity(parse_poly("x*y*(x - y)"), O)
        assert str(cls) == "OrdinaryMultiple(3)"
        assert cls.delta == 3

    def test_type_33_point(self):
        cls = classify_singularity(parse_poly(TRIPLE_33), O)
        assert cls.kind == "TypePoint"
        assert (cls.multiplicity, cls.second_multiplicity) == (3, 3)
        assert str(cls) == "TypePoint(3,3)"
        assert cls.delta == 6

    def test_cusp_is_general(self):
        cls = classify_singularity(parse_poly("y^2*z - x^3"), O)
        assert cls.kind == "General"
        assert str(cls) == "General([[2, 1, 1, 1]])"

    def test_affine_input(self):
        cls = classify_singularity(parse_poly("y^2 - x^4", ("x", "y")), PlanePoint(0, 0))
        assert cls.kind == "Tacnode"
        assert cls.tangent == parse_poly("y", ("x", "y"))


# ═══════════════════════════════════════════════════════════════════════════
# Tangency and intersection
# ═══════════════════════════════════════════════════════════════════════════

class TestTangency:
    """is_tangent_line, multiplicity_at, Noether's sum."""

    def test_multiplicity_at(self, F6, pgq0_points):
        assert multiplicity_at(parse_poly(TRIPLE_33), O) == 3
        assert multiplicity_at(parse_poly("x - z"), O) == 0
        assert multiplicity_at(F6, pgq0_points["p0"]) == 2

    def test_tangent_line_to_conic(self):
        C = parse_poly("y*z - x^2")
        assert is_tangent_line(C, O, parse_poly("y"))
        assert not is_tangent_line(C, O, parse_poly("x"))

    def test_tangent_line_at_tacnode(self):
        assert is_tangent_line(parse_poly(TACNODE), O, parse_poly("y"))
        assert not is_tangent_line(parse_poly(TACNODE), O, parse_poly("x - y"))

    def test_line_must_contain_point(self):
        with pytest.raises(PointNotOnCurve):
            is_tangent_line(parse_poly("y*z - x^2"), O, parse_poly("y - z"))

    @pytest.mark.parametrize("f, g", [
        (TACNODE, "y*z - 2*x^2"),
        (NODAL_CUBIC, "y"),
        (TRIPLE_33, "y*z - x^2"),
        ("y*z - x^2", "y*z^2 - x^3"),
    ])
    def test_noether_agrees(self, f, g):
        F, G = parse_poly(f), parse_poly(g)
        assert noether_intersection(F, G, O) == intersection_multiplicity(F, G, O)


class TestRationalPoints:
    """Common zeros and singular points over Q(i)."""

    def test_common_points_of_lines_and_conic(self):
        pts, complete = rational_common_points([parse_poly("x^2 + y^2 - z^2"), parse_poly("y")])
        assert complete
        assert pts == sorted([PlanePoint(1, 0), PlanePoint(-1, 0)], key=PlanePoint.sort_key)

    def test_points_at_infinity(self):
        pts, _ = rational_common_points([parse_poly("x - y"), parse_poly("x - y - z")])
        assert pts == [PlanePoint(1, 1, 0)]

    def test_incomplete_when_not_split(self):
        pts, complete = rational_common_points([parse_poly("x^2 - 2*z^2"), parse_poly("y")])
        assert pts == []
        assert not complete

    def test_singular_points_of_nodal_cubic(self):
        sing, complete = rational_singular_points(parse_poly(NODAL_CUBIC))
        assert complete
        assert [(p, str(c)) for p, c in sing] == [(O, "Node")]

    def test_smooth_conic_has_none(self):
        sing, complete = rational_singular_points(parse_poly("x^2 + y^2 - z^2"))
        assert sing == [] and complete

    def test_union_of_conic_and_tangent(self):
        sing, _ = rational_singular_points([parse_poly("y*z - x^2"), parse_poly("y")])
        assert [(p, str(c)) for p, c in sing] == [(O, "Tacnode(y)")]

    def test_intersection_points(self):
        pts, complete = intersection_points(parse_poly("y*z - x^2"), parse_poly("y - z"))
        assert complete
        assert sorted(m for _, m in pts) == [1, 1]

    def test_lines_with_large_coordinates(self):
        lines = [
            parse_poly("1000003*x - 1234567*z"),
            parse_poly("1000033*y - 2345671*z"),
            parse_poly("x + y - 1000037*z"),
            parse_poly("x - 2*y + 7*z"),
            parse_poly("3*x + 5*y - 11*z"),
        ]
        product = lines[0] * lines[1] * lines[2] * lines[3] * lines[4]
        sing, complete = rational_singular_points(product)
        assert complete
        assert len(sing) == 10
        assert {str(c) for _, c in sing} == {"Node"}
        for p, _ in sing:
            assert sum(p.lies_on(L) for L in lines) == 2

    @pytest.mark.slow
    def test_pgq0_union_F6_F7(self, F6, F7, pgq0_points):
        sing, complete = rational_singular_points([F6, F7])
        assert complete
        found = {p for p, _ in sing}
        assert set(pgq0_points.values()) <= found
        extra = [(p, str(c)) for p, c in sing if p not in set(pgq0_points.values())]
        assert len(extra) == 1
        assert extra[0][1] == "Node"
        assert str(dict(sing)[pgq0_points["p5"]]) == "OrdinaryMultiple(4)"
