"""Tests for sparse polynomials and plane points.

Covers:
  - MultiPoly arithmetic, degrees, graded parts, exact division
  - substitution, specialisation, (de)homogenisation, univariate views
  - PlanePoint normalisation, text input, incidence
  - localize / line_through / monomials_of_degree
"""

from __future__ import annotations

import pytest

from surfcover.algebra.exactfield import I, GaussianRational
from surfcover.algebra.parser import parse_poly
from surfcover.algebra.poly import (
    LOCAL_VARS,
    MultiPoly,
    PlanePoint,
    line_through,
    localize,
    monomials_of_degree,
    poly_product,
)


# ═══════════════════════════════════════════════════════════════════════════
# MultiPoly
# ═══════════════════════════════════════════════════════════════════════════

class TestMultiPoly:
    """Arithmetic and structure."""

    def test_zero_coefficients_dropped(self):
        F = MultiPoly(("x", "y"), {(1, 0): 0, (0, 1): 2})
        assert len(F) == 1
        assert F.degree() == 1

    def test_zero_polynomial(self):
        Z = MultiPoly.zero(("x", "y"))
        assert Z.degree() == -1
        assert not Z
        assert Z == 0

    def test_i_cannot_name_a_variable(self):
        with pytest.raises(ValueError):
            MultiPoly(("x", "i"))

    def test_variable_mismatch(self):
        with pytest.raises(ValueError):
            parse_poly("x", ("x", "y")) + parse_poly("x")

    def test_degree_and_order(self):
        F = parse_poly("x^3*y + x*y - y^2", ("x", "y"))
        assert F.degree() == 4
        assert F.order() == 2
        assert F.degree_in("x") == 3
        assert F.order_in("y") == 1
        assert F.lowest_part() == parse_poly("x*y - y^2", ("x", "y"))

    def test_homogeneous(self):
        assert parse_poly("x^2 + y*z").is_homogeneous()
        assert not parse_poly("x^2 + y").is_homogeneous()

    def test_power_and_product(self):
        x, y, z = MultiPoly.gens(("x", "y", "z"))
        assert (x + y) ** 2 == x * x + x * y * 2 + y * y
        assert poly_product([x, y, z], ("x", "y", "z")) == parse_poly("x*y*z")

    def test_exact_division(self):
        F = parse_poly("x^2 - y^2")
        assert F.exact_div(parse_poly("x - y")) == parse_poly("x + y")
        with pytest.raises(ValueError):
            F.exact_div(parse_poly("x - z"))
        assert parse_poly("x + y").divides(F)

    def test_monic_and_scalar_equality(self):
        F = parse_poly("2*i*x + 4*y")
        assert F.monic().leading_coefficient() == 1
        assert F.equal_up_to_scalar(parse_poly("x - 2*i*y"))

    def test_differentiate(self):
        F = parse_poly("x^3 + i*x*y")
        assert F.differentiate("x") == parse_poly("3*x^2 + i*y")

    def test_evaluate(self):
        F = parse_poly("x^2 + y^2 + z^2")
        assert F.evaluate((1, I, 0)) == 0
        assert F.evaluate({"x": 1, "y": 1, "z": 1}) == 3
        with pytest.raises(ValueError):
            F.evaluate((1, 2))

    def test_substitute(self):
        F = parse_poly("x*y", ("x", "y"))
        u, v = MultiPoly.gens(LOCAL_VARS)
        G = F.substitute({"x": u + 1, "y": u * v}, LOCAL_VARS)
        assert G == parse_poly("u^2*v + u*v", LOCAL_VARS)

    def test_specialize_keeps_variables(self):
        F = parse_poly("x^2*y + y + 1", ("x", "y"))
        G = F.specialize("y", 2)
        assert G.variables == ("x", "y")
        assert G == parse_poly("2*x^2 + 3", ("x", "y"))

    def test_homogenize_dehomogenize(self):
        f = parse_poly("x^2 + y + 1", ("x", "y"))
        F = f.homogenize("z")
        assert F == parse_poly("x^2 + y*z + z^2")
        assert F.dehomogenize("z") == f

    def test_univariate_views(self):
        f = parse_poly("3*x^2 - 1", ("x", "y"))
        assert f.to_univariate() == [-1, 0, 3]
        assert MultiPoly.from_univariate([-1, 0, 3], "x", ("x", "y")) == f
        with pytest.raises(ValueError):
            parse_poly("x*y", ("x", "y")).to_univariate()

    def test_rename_and_with_variables(self):
        f = parse_poly("x*y", ("x", "y"))
        assert f.rename({"x": "u", "y": "v"}) == parse_poly("u*v", LOCAL_VARS)
        assert f.with_variables(("x", "y", "z")) == parse_poly("x*y")
        with pytest.raises(ValueError):
            f.with_variables(("x", "z"))

    def test_hashable(self):
        assert len({parse_poly("x+y"), parse_poly("y+x")}) == 1


# ═══════════════════════════════════════════════════════════════════════════
# Points and charts
# ═══════════════════════════════════════════════════════════════════════════

class TestPlanePoint:
    """Projective points over Q(i)."""

    def test_equal_up_to_scaling(self):
        assert PlanePoint(2, 4, 2) == PlanePoint(1, 2, 1)
        assert PlanePoint(I, 0, 0) == PlanePoint(1, 0, 0)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            PlanePoint(0, 0, 0)

    def test_from_text(self):
        p = PlanePoint.from_text("3,2*i,1")
        assert p.affine() == (GaussianRational(3), GaussianRational(0, 2))
        assert PlanePoint.from_text("3,2*i") == p
        with pytest.raises(ValueError):
            PlanePoint.from_text("1,2,3,4")

    def test_point_at_infinity(self):
        p = PlanePoint(1, 1, 0)
        assert not p.is_affine()
        with pytest.raises(ValueError):
            p.affine()

    def test_lies_on(self, F6, pgq0_points):
        assert pgq0_points["p0"].lies_on(F6)
        assert pgq0_points["p5"].lies_on(F6)
        assert not PlanePoint(1, 1, 1).lies_on(parse_poly("x - 2*z"))

    def test_lies_on_affine_equation(self):
        assert PlanePoint(2, 3).lies_on(parse_poly("x*y - 6", ("x", "y")))
        assert not PlanePoint(1, 0, 0).lies_on(parse_poly("x", ("x", "y")))


class TestCharts:
    """Local equations and lines."""

    def test_localize_moves_point_to_origin(self):
        F = parse_poly("x^2 + y^2 - z^2")
        f = localize(F, PlanePoint(1, 0, 1))
        assert f.variables == LOCAL_VARS
        assert f.constant_term() == 0
        assert f.order() == 1

    def test_localize_affine_input(self):
        f = localize(parse_poly("x*y - 6", ("x", "y")), PlanePoint(2, 3))
        assert f == parse_poly("u*v + 3*u + 2*v", LOCAL_VARS)

    def test_localize_at_infinity_uses_other_chart(self):
        f = localize(parse_poly("y*z - x^2"), PlanePoint(0, 1, 0))
        assert f.constant_term() == 0
        assert f.order() == 1

    def test_line_through(self):
        p, q = PlanePoint(0, 0), PlanePoint(1, 1)
        L = line_through(p, q)
        assert L.equal_up_to_scalar(parse_poly("x - y"))
        assert p.lies_on(L) and q.lies_on(L)
        with pytest.raises(ValueError):
            line_through(p, PlanePoint(0, 0, 5))

    def test_monomials_of_degree(self):
        mons = monomials_of_degree(2)
        assert len(mons) == 6
        assert mons[0] == (2, 0, 0)
        assert all(sum(m) == 2 for m in mons)
        assert len(monomials_of_degree(6)) == 28
