"""Tests for transversality certificates.

Covers:
  - coordinate changes and preimages
  - transverse pairs and triples, residual point counts
  - excluded centers divided out of the resultant
  - tangency found as a contact, shared components, concurrent lines
"""

from __future__ import annotations

import numpy as np
import pytest

from surfcover.algebra.parser import parse_poly
from surfcover.algebra.poly import PlanePoint
from surfcover.engine.transversality import (
    _det3,
    apply_change,
    branch_certificate,
    preimage,
    random_change,
    transversality_certificate,
)
from surfcover.errors import CertificateInconclusive

O = PlanePoint(0, 0, 1)
RETRIES = 10


class TestCoordinateChange:
    """random_change, apply_change and preimage."""

    def test_changes_are_invertible(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            assert _det3(random_change(rng)) != 0

    def test_preimage_lies_on_transformed_curve(self):
        F = parse_poly("x + 2*y - 3*z")
        M = [[1, 1, 0], [0, 1, 2], [1, 0, 1]]
        p = PlanePoint(1, 1, 1)
        assert p.lies_on(F)
        assert preimage(p, M).lies_on(apply_change(F, M))


class TestCertificates:
    """transversality_certificate and branch_certificate."""

    def test_two_lines(self):
        cert = transversality_certificate([parse_poly("x"), parse_poly("y")], retries=RETRIES)
        assert cert.certified
        assert cert.residual_points == 1
        assert cert.bezout == {("C0", "C1"): 1}
        assert cert.triple_free is None

    def test_conic_and_secant(self):
        cert = transversality_certificate([parse_poly("y*z - x^2"), parse_poly("y - z")], retries=RETRIES)
        assert cert.certified
        assert cert.pair_counts == {("C0", "C1"): 2}

    def test_tangent_line_is_a_contact(self):
        cert = transversality_certificate([parse_poly("y*z - x^2"), parse_poly("y")], retries=RETRIES)
        assert not cert.certified
        assert cert.reason == "non-transverse contact"
        assert [(c.point, c.multiplicity) for c in cert.contacts] == [(O, 2)]
        assert cert.to_json()["contacts"][0]["curves"] == ["C0", "C1"]

    def test_tangency_at_excluded_center(self):
        cert = transversality_certificate(
            [parse_poly("y*z - x^2"), parse_poly("y")], excluded_centers=[O], retries=RETRIES
        )
        assert cert.certified
        assert cert.residual_points == 0
        assert cert.excluded == {("C0", "C1"): {"(0:0:1)": 2}}

    def test_shared_component(self):
        cert = transversality_certificate([parse_poly("x*y"), parse_poly("x*(x - z)")])
        assert not cert.certified
        assert "share a component" in cert.reason

    def test_three_general_lines(self):
        lines = [parse_poly("x"), parse_poly("y"), parse_poly("x + y - z")]
        cert = transversality_certificate(lines, retries=RETRIES)
        assert cert.certified
        assert cert.triple_free is True
        assert cert.residual_points == 3

    def test_concurrent_lines_inconclusive(self):
        # pairwise transverse, but all three pass through O
        lines = [parse_poly("x"), parse_poly("y"), parse_poly("x - y")]
        with pytest.raises(CertificateInconclusive):
            transversality_certificate(lines, retries=3)

    def test_supports_group_components(self):
        supports = [
            [("a", parse_poly("x")), ("b", parse_poly("x - z"))],
            [("c", parse_poly("y"))],
        ]
        cert = branch_certificate(supports, retries=RETRIES)
        assert cert.certified
        assert cert.pair_counts == {("a", "c"): 1, ("b", "c"): 1}
        assert "a·c" in cert.to_json()["pair_counts"]
