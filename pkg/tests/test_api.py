"""Tests for the HTTP surface.

Covers:
  - /health and /scenarios
  - /resolve, /irreducible, /intersect, /linsys payloads
  - toolkit errors mapped to 422 with {error, detail}
  - request validation
  - /verify on a real scenario (slow)
"""

from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from surfcover import __version__
from surfcover.api.server import app

client = TestClient(app)

FIVE_POINTS = {
    "points": {"a": "0,0,1", "b": "1,0,1", "c": "0,1,1", "d": "1,1,1", "e": "2,3,1"},
    "conditions": [{"center": n, "multiplicity": 1} for n in "abcde"],
}


# ═══════════════════════════════════════════════════════════════════════════
# Metadata
# ═══════════════════════════════════════════════════════════════════════════

class TestMetadata:
    """Liveness and the scenario list."""

    def test_health(self):
        r = client.get("/health")
        assert r.status_code == 200
        assert r.json() == {"status": "ok", "version": __version__}

    def test_scenarios(self):
        r = client.get("/scenarios")
        assert r.status_code == 200
        data = r.json()
        assert [s["name"] for s in data] == ["pgq0", "pgq1", "pgq2"]
        pgq0 = data[0]
        assert pgq0["expected"]["Ksq_min"] == 7
        assert pgq0["expected"]["pg"] == 0

    def test_unknown_scenario(self):
        r = client.post("/verify/pgq9")
        assert r.status_code == 422
        assert r.json()["error"] == "FixtureError"
        assert "pgq9" in r.json()["detail"]


# ═══════════════════════════════════════════════════════════════════════════
# Single-curve tools
# ═══════════════════════════════════════════════════════════════════════════

class TestTools:
    """The CLI computations over HTTP."""

    def test_resolve_tacnode(self):
        r = client.post("/resolve", json={"curve": "y^2*z^2 - x^4", "point": "0,0,1"})
        assert r.status_code == 200
        data = r.json()
        assert data["class"] == "Tacnode(y)"
        assert data["delta"] == 2
        assert data["multiplicity"] == 2
        assert data["point"] == "(0:0:1)"

    def test_resolve_accepts_listing_text(self):
        r = client.post("/resolve", json={"curve": "C := y^2*z - x^3 - x^2*z;", "point": "0,0"})
        assert r.status_code == 200
        assert r.json()["class"] == "Node"

    def test_irreducible(self):
        r = client.post("/irreducible", json={"curve": "x^2 + y^2"})
        assert r.json() == {"degree": 2, "terms": 2, "absolute_factors": 2, "irreducible": False}

    def test_intersect(self):
        r = client.post("/intersect", json={"curve_a": "y*z - x^2", "curve_b": "y", "point": "0,0,1"})
        assert r.json() == {"point": "(0:0:1)", "intersection": 2, "bezout": 2}

    def test_intersect_common_component(self):
        r = client.post("/intersect", json={"curve_a": "x*y", "curve_b": "x*(y - z)", "point": "0,0,1"})
        assert r.json()["intersection"] == "infinite"

    def test_linsys(self):
        r = client.post("/linsys", json={"degree": 2, "conditions": FIVE_POINTS})
        assert r.status_code == 200
        data = r.json()
        assert (data["rows"], data["rank"], data["dimension"]) == (5, 5, 0)
        assert data["expected_dimension"] == 0
        assert "member" in data

    def test_linsys_with_tangent(self):
        conditions = {
            "points": {"o": "0,0,1"},
            "lines": {"t": "y"},
            "conditions": [{"center": "o", "multiplicity": 2, "tangent": "t"}],
        }
        r = client.post("/linsys", json={"degree": 2, "conditions": conditions})
        data = r.json()
        assert data["dimension"] == 0
        assert data["member"] == "y^2"
        assert data["conditions"][1] == "mult 2 at (0:0:1) → slope 0"


# ═══════════════════════════════════════════════════════════════════════════
# Errors
# ═══════════════════════════════════════════════════════════════════════════

class TestErrors:
    """Toolkit errors come back as 422 with the exception name."""

    def test_point_off_curve(self):
        r = client.post("/resolve", json={"curve": "x - z", "point": "0,0,1"})
        assert r.status_code == 422
        assert r.json()["error"] == "ConfigMismatch"

    def test_parse_error(self):
        r = client.post("/irreducible", json={"curve": "x^2 + $"})
        assert r.status_code == 422
        assert r.json()["error"] == "ParseError"

    def test_affine_curve_rejected(self):
        r = client.post("/irreducible", json={"curve": "x^2 + y"})
        assert r.json()["error"] == "ConfigMismatch"

    def test_repeated_factor(self):
        r = client.post("/irreducible", json={"curve": "x^2*y"})
        assert r.json()["error"] == "NotSquarefree"

    def test_bad_point(self):
        r = client.post("/intersect", json={"curve_a": "x", "curve_b": "y", "point": "1"})
        assert r.json()["error"] == "FixtureError"

    def test_tangent_line_missing_point(self):
        conditions = {
            "points": {"o": "0,0,1"},
            "lines": {"t": "y - z"},
            "conditions": [{"center": "o", "multiplicity": 2, "tangent": "t"}],
        }
        r = client.post("/linsys", json={"degree": 3, "conditions": conditions})
        assert r.status_code == 422
        assert r.json()["error"] == "PointNotOnCurve"

    @pytest.mark.parametrize("body", [
        {"degree": 0, "conditions": FIVE_POINTS},
        {"degree": 2, "conditions": {"points": {}}},
        {"degree": 2, "conditions": {"points": {"a": "0,0"}, "conditions": [{"center": "b", "multiplicity": 1}]}},
        {"degree": 2, "conditions": {"points": {"a": "0,0"}, "conditions": [{"center": "a", "multiplicity": 0}]}},
    ])
    def test_request_validation(self, body):
        assert client.post("/linsys", json=body).status_code == 422

    def test_depth_cap_bounds(self):
        r = client.post("/resolve", json={"curve": "x", "point": "0,0,1", "depth_cap": 0})
        assert r.status_code == 422


@pytest.mark.slow
class TestVerify:
    """A full run over HTTP, served from the session pgq0 report."""

    def test_verify_pgq0(self, monkeypatch, scenario_report):
        seen = []

        def run(name, config):
            seen.append((name, config.seed))
            return scenario_report(name)

        monkeypatch.setattr("surfcover.api.server.run_scenario", run)
        r = client.post("/verify/pgq0", json={"config": {"seed": 0}})
        assert r.status_code == 200
        assert seen == [("pgq0", 0)]
        data = r.json()
        assert data["passed"] is True
        assert data["invariants"]["Ksq_min"] == 7
