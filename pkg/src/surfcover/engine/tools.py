"""Single-curve computations behind ``surfcover resolve|irreducible|intersect|linsys``.

Each function takes text (polynomials, point triples) and returns a
JSON-safe dict, so the CLI and the HTTP surface print the same payload.
"""

from __future__ import annotations

import logging
from typing import Any

from surfcover.algebra.intersection import intersection_multiplicity
from surfcover.algebra.irreducibility import absolute_factor_count
from surfcover.algebra.poly import PlanePoint
from surfcover.config.scenario import ConditionsFile
from surfcover.engine.common import build_conditions
from surfcover.engine.context import read_curve
from surfcover.engine.report import jsonable
from surfcover.errors import ConfigMismatch, FixtureError
from surfcover.geometry.linsys import find_member, linear_system
from surfcover.geometry.singularity import classify_singularity, multiplicity_at

logger = logging.getLogger(__name__)


def _point(text: str) -> PlanePoint:
    try:
        return PlanePoint.from_text(text)
    except ValueError as exc:
        raise FixtureError(f"point {text!r}: {exc}") from exc


def resolve_curve(curve_text: str, point_text: str, depth_cap: int = 16) -> dict[str, Any]:
    F = read_curve(curve_text)
    p = _point(point_text)
    if not p.lies_on(F):
        raise ConfigMismatch(f"{p} does not lie on the curve")
    cls = classify_singularity(F, p, depth_cap)
    return jsonable({
        "point": p,
        "multiplicity": multiplicity_at(F, p),
        "class": str(cls),
        "delta": cls.delta,
        "tree": cls.tree.to_json(),
    })


def irreducible_curve(curve_text: str, seed: int = 0) -> dict[str, Any]:
    F = read_curve(curve_text)
    count = absolute_factor_count(F, seed)
    return {"degree": F.degree(), "terms": len(F), "absolute_factors": count, "irreducible": count == 1}


def intersect_curves(a_text: str, b_text: str, point_text: str) -> dict[str, Any]:
    F, G = read_curve(a_text), read_curve(b_text)
    p = _point(point_text)
    value = intersection_multiplicity(F, G, p)
    return jsonable({
        "point": p,
        "intersection": value if isinstance(value, int) else "infinite",
        "bezout": F.degree() * G.degree(),
    })


def linsys_summary(degree: int, conditions: ConditionsFile, seed: int | None = None) -> dict[str, Any]:
    """Rows, rank and dimension of a degree-``degree`` system; a member when it is non-empty."""
    points = {name: _point(text) for name, text in conditions.points.items()}
    lines = {name: read_curve(text) for name, text in conditions.lines.items()}
    for name, L in lines.items():
        if L.degree() != 1:
            raise ConfigMismatch(f"tangent {name} is not a line")
    conds = build_conditions(conditions.conditions, points, lines)
    result = linear_system(degree, conds)
    out: dict[str, Any] = {
        "degree": degree,
        "conditions": [str(c) for c in conds],
        "rows": result.matrix.rows,
        "rank": result.matrix.rank(),
        "dimension": result.dimension,
        "expected_dimension": result.expected_dimension,
    }
    if result.dimension >= 0:
        out["member"] = find_member(result, combination_seed=seed)
    logger.debug("linsys degree %d: %s", degree, out["dimension"])
    return jsonable(out)
