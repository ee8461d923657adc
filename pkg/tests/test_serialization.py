"""Report serialization: exact values become JSON-safe, reports round-trip.

Covers:
  - jsonable on field elements, points, polynomials, sets and nested data
  - ReportBuilder check / expect / assume and the FAIL-on-error rule
  - ScenarioReport passed / failures / check lookup
  - sorted-key JSON that validates back into the same report
"""

from __future__ import annotations

import json
from fractions import Fraction

import pytest

from surfcover.algebra.exactfield import GaussianRational
from surfcover.algebra.parser import parse_poly
from surfcover.algebra.poly import PlanePoint
from surfcover.engine.report import ReportBuilder, jsonable
from surfcover.errors import DivisionByZero
from surfcover.geometry.covers import SurfaceInvariants
from surfcover.models.results import ScenarioReport


# ═══════════════════════════════════════════════════════════════════════════
# jsonable
# ═══════════════════════════════════════════════════════════════════════════

class TestJsonable:
    """Exact values print as text; containers recurse."""

    def test_scalars_pass_through(self):
        assert jsonable(3) == 3
        assert jsonable(True) is True
        assert jsonable(None) is None
        assert jsonable("x") == "x"

    def test_field_elements(self):
        assert jsonable(GaussianRational(1, 2)) == "1+2*i"
        assert jsonable(GaussianRational(0, -1)) == "-i"
        assert jsonable(Fraction(1, 2)) == "1/2"

    def test_points_and_polynomials(self):
        assert jsonable(PlanePoint(0, 0, 1)) == "(0:0:1)"
        assert jsonable(parse_poly("y^2")) == "y^2"

    def test_containers(self):
        data = jsonable({("C0", "C1"): [1, GaussianRational(0, 1)], "s": {"b", "a"}})
        assert data == {"('C0', 'C1')": [1, "i"], "s": ["a", "b"]}
        json.dumps(data)

    def test_invariants(self):
        inv = SurfaceInvariants(chi=1, pg=0, Ksq=-9, Ksq_min=7)
        assert jsonable(inv) == {"chi": 1, "pg": 0, "Ksq": -9, "Ksq_min": 7}


# ═══════════════════════════════════════════════════════════════════════════
# ReportBuilder
# ═══════════════════════════════════════════════════════════════════════════

class TestReportBuilder:
    """Entries are recorded in order, prefixed with the scenario name."""

    def test_check_pass_and_fail(self):
        rb = ReportBuilder("pgq0", 0)
        assert rb.check("a", "first", "", lambda: (True, {"n": 1}))
        assert not rb.check("b", "second", "", lambda: (False, {}))
        assert [e.id for e in rb.entries] == ["pgq0.a", "pgq0.b"]
        assert [e.status for e in rb.entries] == ["PASS", "FAIL"]
        assert not rb.passed

    def test_toolkit_error_becomes_fail(self):
        def boom():
            raise DivisionByZero("inverse of zero")

        rb = ReportBuilder("pgq1", 0)
        assert not rb.check("div", "divides", "", boom)
        assert rb.entries[0].values["error"] == "DivisionByZero: inverse of zero"

    def test_other_errors_propagate(self):
        def bug():
            raise KeyError("x")

        with pytest.raises(KeyError):
            ReportBuilder("pgq1", 0).check("bug", "", "", bug)

    def test_expect(self):
        rb = ReportBuilder("pgq2", 0)
        assert rb.expect("k", "K²", "", 7, 7)
        assert not rb.expect("chi", "χ", "", 0, 1)
        assert rb.entries[1].values == {"computed": 0, "expected": 1}

    def test_assume_never_fails(self):
        rb = ReportBuilder("pgq2", 0)
        rb.assume("kummer", "the sixteen curves are disjoint")
        assert rb.passed
        assert rb.entries[0].status == "ASSUMED"
        assert rb.assumptions == ["pgq2.kummer: the sixteen curves are disjoint"]


# ═══════════════════════════════════════════════════════════════════════════
# ScenarioReport
# ═══════════════════════════════════════════════════════════════════════════

@pytest.fixture
def report() -> ScenarioReport:
    rb = ReportBuilder("pgq0", 3)
    rb.check("ok", "", "", lambda: (True, {"p": PlanePoint(1, 2)}))
    rb.check("bad", "", "", lambda: (False, {}))
    rb.assume("even", "branch divisibility")
    return rb.build(SurfaceInvariants(chi=1, pg=0, Ksq=-9, Ksq_min=7))


class TestScenarioReport:
    """Lookup, status and JSON."""

    def test_status(self, report):
        assert not report.passed
        assert [c.id for c in report.failures] == ["pgq0.bad"]
        assert report.check("pgq0.ok").values == {"p": "(1:2:1)"}
        with pytest.raises(KeyError):
            report.check("pgq0.missing")

    def test_invariants_summary(self, report):
        assert report.invariants.Ksq_min == 7
        assert report.seed == 3

    def test_json_is_sorted_and_revalidates(self, report):
        text = report.to_json()
        data = json.loads(text)
        assert data["passed"] is False
        assert list(data) == sorted(data)
        again = ScenarioReport.model_validate(data)
        assert again.to_json() == text

    def test_empty_report_passes(self):
        assert ReportBuilder("pgq1", 0).build().passed
