"""Tests for blow-up configurations and divisor classes.

Covers:
  - configuration structure: proximity, chains, validation
  - DivisorClass arithmetic, intersection form, text and JSON forms
  - canonical class, adjunction, evenness
  - strict transform classes of the pgq0 curves
  - the bidouble-cover class identities
"""

from __future__ import annotations

import pytest

from surfcover.algebra.poly import PlanePoint
from surfcover.errors import ConfigMismatch, NotEven, ParseError
from surfcover.geometry.picard import (
    SLOPE_ZERO,
    VERTICAL,
    BlowupConfiguration,
    Center,
    arithmetic_genus,
    check_bidouble_data,
    class_sum,
    halve,
    is_even,
)


# ═══════════════════════════════════════════════════════════════════════════
# Configuration
# ═══════════════════════════════════════════════════════════════════════════

class TestConfiguration:
    """Centers and proximity."""

    def test_labels(self, pgq0_cfg):
        assert pgq0_cfg.labels == ("0", "1", "1'", "2", "2'", "3", "3'", "4", "4'", "5")

    def test_proximity(self, pgq0_cfg):
        assert pgq0_cfg.proximate("1'") == ["1"]
        assert pgq0_cfg.proximate("1") == []
        assert not pgq0_cfg.is_satellite("1'")

    def test_chain(self, pgq0_cfg, pgq0_points):
        p, directions = pgq0_cfg.chain("2'")
        assert p == pgq0_points["p2"]
        assert len(directions) == 1

    def test_proximity_matrix_is_unimodular(self, pgq0_cfg):
        P = pgq0_cfg.proximity_matrix()
        assert P.rank() == len(pgq0_cfg)
        assert P[2, 1] == -1

    def test_satellite_point(self):
        cfg = BlowupConfiguration([
            Center("a", point=PlanePoint(0, 0)),
            Center("b", parent="a", direction=VERTICAL),
            Center("c", parent="b", direction=SLOPE_ZERO),
        ])
        # c lies on the strict transform of E_a and on E_b
        assert cfg.proximate("c") == ["a", "b"]
        assert cfg.is_satellite("c")
        assert cfg.exceptional_strict("a") == cfg.parse_class("Ea - Eb - Ec")

    def test_center_needs_exactly_one_source(self):
        with pytest.raises(ValueError):
            Center("x")
        with pytest.raises(ValueError):
            Center("x", point=PlanePoint(0, 0), parent="y")
        with pytest.raises(ValueError):
            Center("x", parent="y")

    def test_parent_must_come_first(self):
        with pytest.raises(ValueError):
            BlowupConfiguration([
                Center("b", parent="a", direction=VERTICAL),
                Center("a", point=PlanePoint(0, 0)),
            ])

    def test_duplicate_labels(self):
        with pytest.raises(ValueError):
            BlowupConfiguration([Center("a", point=PlanePoint(0, 0)), Center("a", point=PlanePoint(1, 0))])

    def test_unknown_label(self, pgq0_cfg):
        with pytest.raises(ConfigMismatch):
            pgq0_cfg.E("9")


# ═══════════════════════════════════════════════════════════════════════════
# Classes
# ═══════════════════════════════════════════════════════════════════════════

class TestDivisorClass:
    """Arithmetic, text and the intersection form."""

    def test_parse_and_print(self, pgq0_cfg):
        text = "8T - 4E0 - 2E1 - 2E1' - 2E2 - 3E2' - 2E3 - 3E3' - 2E4 - 3E4' - 2E5"
        a = pgq0_cfg.parse_class(text)
        assert str(a) == text
        assert a.mult("2'") == 3

    def test_parse_with_positive_exceptional(self, pgq0_cfg):
        a = pgq0_cfg.parse_class("T - E0 - 2E1' + E5")
        assert a.mult("5") == -1
        assert str(a) == "T - E0 - 2E1' + E5"

    def test_parse_zero_and_canonical(self, pgq0_cfg):
        assert pgq0_cfg.parse_class("0").is_zero
        assert pgq0_cfg.parse_class("K") == pgq0_cfg.canonical_class()
        assert pgq0_cfg.parse_class("2*T") == pgq0_cfg.T(2)

    def test_parse_errors(self, pgq0_cfg):
        with pytest.raises(ConfigMismatch):
            pgq0_cfg.parse_class("2T - E9")
        with pytest.raises(ParseError):
            pgq0_cfg.parse_class("2T E0")
        with pytest.raises(ParseError):
            pgq0_cfg.parse_class("2T - F0")

    def test_intersection_form(self, pgq0_cfg):
        T, E0 = pgq0_cfg.T(), pgq0_cfg.E("0")
        assert T.dot(T) == 1
        assert E0.square == -1
        assert T.dot(E0) == 0

    def test_canonical_class(self, pgq0_cfg):
        K = pgq0_cfg.canonical_class()
        assert K.square == 9 - len(pgq0_cfg)
        assert str(K).startswith("-3T + E0")

    def test_exceptional_strict(self, pgq0_cfg):
        a = pgq0_cfg.exceptional_strict("1")
        assert str(a) == "E1 - E1'"
        assert a.square == -2
        assert pgq0_cfg.exceptional_strict("5").square == -1

    def test_adjunction(self, pgq0_cfg):
        line = pgq0_cfg.parse_class("T - E0 - E1 - E1'")
        assert line.square == -2
        assert arithmetic_genus(line) == 0
        assert arithmetic_genus(pgq0_cfg.T(3)) == 1

    def test_even_and_halve(self, pgq0_cfg):
        a = pgq0_cfg.parse_class("4T - 2E0 - 2E5")
        assert is_even(a)
        assert halve(a) == pgq0_cfg.parse_class("2T - E0 - E5")
        with pytest.raises(NotEven):
            halve(pgq0_cfg.parse_class("T - E0"))

    def test_class_sum_and_scalar(self, pgq0_cfg):
        T = pgq0_cfg.T()
        assert class_sum([T, T, T], pgq0_cfg) == 3 * T
        assert class_sum([], pgq0_cfg).is_zero

    def test_json(self, pgq0_cfg):
        data = pgq0_cfg.parse_class("2T - E0").to_json()
        assert data["degree"] == 2
        assert data["mults"][0] == {"center": "E0", "mult": 1}
        assert len(data["mults"]) == 10

    def test_mixing_configurations_rejected(self, pgq0_cfg):
        other = BlowupConfiguration([Center("0", point=PlanePoint(0, 0))])
        with pytest.raises(ConfigMismatch):
            pgq0_cfg.T() + other.T()


# ═══════════════════════════════════════════════════════════════════════════
# Curves and bidouble data
# ═══════════════════════════════════════════════════════════════════════════

class TestCurveClasses:
    """Strict transform classes read off the equations."""

    def test_tangent_lines(self, pgq0_context):
        for k in "1234":
            cls = pgq0_context.curve_class(f"T{k}")
            assert cls == pgq0_context.config.parse_class(f"T - E0 - E{k} - E{k}'")

    def test_F6_class(self, pgq0_context):
        expected = "6T - 2E0 - 2E1 - 2E1' - 2E2 - 2E2' - 2E3 - 2E3' - 2E4 - 2E4' - E5"
        assert pgq0_context.curve_class("F6") == pgq0_context.config.parse_class(expected)

    def test_F7_class(self, pgq0_context):
        expected = "7T - 3E0 - 2E1 - 2E1' - 2E2 - 2E2' - 2E3 - 2E3' - 2E4 - 2E4' - 3E5"
        assert pgq0_context.curve_class("F7") == pgq0_context.config.parse_class(expected)


class TestBidoubleData:
    """L_g + D_g = L_j + L_k and 2L_g = D_j + D_k."""

    def test_pgq0_data_holds(self, pgq0_context):
        D = [pgq0_context.D(n) for n in ("D1", "D2", "D3")]
        L = [pgq0_context.L(n) for n in ("L1", "L2", "L3")]
        report = check_bidouble_data(D, L)
        assert report.holds
        assert len(report.checks) == 6

    def test_perturbed_L_fails(self, pgq0_context):
        D = [pgq0_context.D(n) for n in ("D1", "D2", "D3")]
        L = [pgq0_context.L(n) for n in ("L1", "L2", "L3")]
        L[0] = L[0] + pgq0_context.config.T()
        report = check_bidouble_data(D, L)
        assert not report.holds
        failed = [c.name for c in report.checks if not c.holds]
        assert "2L1=D2+D3" in failed

    def test_needs_three_classes(self, pgq0_context):
        with pytest.raises(ValueError):
            check_bidouble_data([pgq0_context.D("D1")], [pgq0_context.L("L1")])
