"""Linear systems of plane curves with assigned base points.

Unknowns are the coefficients of a degree-``d`` form, one column per monomial
in descending graded-lex order.  A condition "multiplicity ≥ m at p" asks the
local jets of degree < m at ``p`` to vanish, i.e. ``m(m + 1)/2`` linear rows.

For a point infinitely near ``p`` the condition is imposed on the virtual
transform: keep the local terms of degree ≥ ``m_p`` (the multiplicity
assigned at ``p``), substitute the blow-up chart and divide by the
exceptional factor to the power ``m_p``.  Every step is linear in the
coefficients, so the whole cluster is still a matrix.

A tacnode with assigned tangent ``ℓ`` at ``p`` is the cluster
``(p, 2)`` plus ``(p', 2)`` with ``p'`` the point on the exceptional curve in
the direction of ``ℓ``.

``h⁰`` of a class on the blow-up is found by unloading: while some curve
``C`` of a catalog of irreducible negative curves has ``a·C < 0``, ``C`` is in
the base locus and ``a ← a − C``.  What remains is counted with the condition
matrix of its positive multiplicities.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from surfcover.algebra.exactfield import ExactMatrix, GaussianRational, Vector
from surfcover.algebra.poly import MultiPoly, PlanePoint, localize, monomials_of_degree, PROJECTIVE_VARS
from surfcover.errors import CatalogInsufficient, EmptySystem
from surfcover.geometry.picard import BlowupConfiguration, DivisorClass
from surfcover.geometry.singularity import (
    Direction,
    chain_multiplicities,
    direction_of_line,
    virtual_transform,
)

logger = logging.getLogger(__name__)

UNLOADING_CAP = 100


# ═══════════════════════════════════════════════════════════════════════════
# Conditions
# ═══════════════════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class BaseCondition:
    """Multiplicity ≥ ``multiplicity`` at ``point`` or at a point infinitely near it.

    ``directions`` leads from ``point`` to the infinitely near center and
    ``virtual`` holds the multiplicity assigned at each ancestor on the way.
    """

    point: PlanePoint
    multiplicity: int
    directions: tuple[Direction, ...] = ()
    virtual: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.multiplicity < 1:
            raise ValueError("a base condition needs multiplicity ≥ 1")
        if len(self.directions) != len(self.virtual):
            raise ValueError("one virtual multiplicity is needed per blow-up step")
        if any(m < 1 for m in self.virtual):
            raise ValueError("virtual multiplicities along a chain must be ≥ 1")

    @property
    def row_count(self) -> int:
        return self.multiplicity * (self.multiplicity + 1) // 2

    def local_form(self, F: MultiPoly) -> MultiPoly:
        """``F`` moved to the center: localized, then virtually transformed along the chain."""
        f = localize(F, self.point)
        for d, m in zip(self.directions, self.virtual):
            f = virtual_transform(f, d, m)
        return f

    def __str__(self) -> str:
        where = str(self.point)
        if self.directions:
            where += " → " + " → ".join(str(d) for d in self.directions)
        return f"mult {self.multiplicity} at {where}"


def point_condition(p: PlanePoint, multiplicity: int = 1) -> BaseCondition:
    return BaseCondition(p, multiplicity)


def tacnode_conditions(p: PlanePoint, tangent: MultiPoly | Direction, multiplicity: int = 2) -> list[BaseCondition]:
    """Cluster for an ``(m, m)``-point at ``p`` whose branches are tangent to ``tangent``."""
    d = tangent if isinstance(tangent, Direction) else direction_of_line(tangent, p)
    return [
        BaseCondition(p, multiplicity),
        BaseCondition(p, multiplicity, (d,), (multiplicity,)),
    ]


def condition_matrix(d: int, conds: Sequence[BaseCondition], variables: Sequence[str] = PROJECTIVE_VARS) -> ExactMatrix:
    """Rows are the vanishing jet coefficients; columns the degree-``d`` monomials."""
    if d < 1:
        raise ValueError("linear systems are taken in degree ≥ 1")
    monomials = monomials_of_degree(d, len(variables))
    columns = [MultiPoly.monomial(e, variables) for e in monomials]
    rows: list[list[GaussianRational]] = []
    for cond in conds:
        local = [cond.local_form(col) for col in columns]
        for total in range(cond.multiplicity):
            for a in range(total, -1, -1):
                exps = (a, total - a)
                rows.append([g.coefficient(exps) for g in local])
    if not rows:
        return ExactMatrix.zeros(0, len(columns))
    return ExactMatrix(rows, cols=len(columns))


def system_dimension(d: int, conds: Sequence[BaseCondition]) -> int:
    """Projective dimension; −1 for the empty system."""
    M = condition_matrix(d, conds)
    return M.cols - M.rank() - 1


# ═══════════════════════════════════════════════════════════════════════════
# Systems and members
# ═══════════════════════════════════════════════════════════════════════════

@dataclass
class LinearSystemResult:
    degree: int
    conditions: list[BaseCondition]
    matrix: ExactMatrix
    basis: list[Vector] = field(default_factory=list)
    variables: tuple[str, ...] = PROJECTIVE_VARS

    @property
    def dimension(self) -> int:
        return len(self.basis) - 1

    @property
    def expected_dimension(self) -> int:
        return max(-1, self.matrix.cols - sum(c.row_count for c in self.conditions) - 1)

    def to_poly(self, vector: Vector) -> MultiPoly:
        monomials = monomials_of_degree(self.degree, len(self.variables))
        return MultiPoly(self.variables, dict(zip(monomials, vector)))


def linear_system(d: int, conds: Sequence[BaseCondition], variables: Sequence[str] = PROJECTIVE_VARS) -> LinearSystemResult:
    M = condition_matrix(d, conds, variables)
    basis = M.kernel()
    result = LinearSystemResult(d, list(conds), M, basis, tuple(variables))
    logger.info(
        "degree %d system: %d condition rows, rank %d, dimension %d",
        d, M.rows, M.rank(), result.dimension,
    )
    return result


def find_member(result: LinearSystemResult, index: int = 0, combination_seed: int | None = None) -> MultiPoly:
    """A kernel member: basis vector ``index``, or a seeded integer combination of all of them."""
    if not result.basis:
        raise EmptySystem(f"no curve of degree {result.degree} satisfies the conditions")
    if combination_seed is None:
        if not 0 <= index < len(result.basis):
            raise IndexError(f"basis has {len(result.basis)} members")
        F = result.to_poly(result.basis[index])
    else:
        rng = np.random.default_rng(combination_seed)
        weights = [int(w) for w in rng.integers(-20, 21, size=len(result.basis))]
        if not any(weights):
            weights[0] = 1
        vec = [sum((b[k] * w for w, b in zip(weights, result.basis)), GaussianRational(0)) for k in range(result.matrix.cols)]
        F = result.to_poly(vec)
    return F.monic()


def verify_member(F: MultiPoly, conds: Sequence[BaseCondition]) -> list[bool]:
    """Re-check each condition by the multiplicity of the actual strict transform.

    Chains are read with the curve's own multiplicities, which agree with the
    virtual ones whenever the member has exactly the assigned multiplicity at
    each ancestor.
    """
    out = []
    for cond in conds:
        mults = chain_multiplicities(F, cond.point, list(cond.directions))
        out.append(mults[-1] >= cond.multiplicity)
    return out


# ═══════════════════════════════════════════════════════════════════════════
# h⁰ of classes on the blow-up
# ═══════════════════════════════════════════════════════════════════════════

def unload(a: DivisorClass, catalog: Sequence[DivisorClass], cap: int = UNLOADING_CAP) -> DivisorClass:
    """Remove catalog curves meeting the class negatively until none does."""
    for step in range(cap + 1):
        for C in catalog:
            if a.dot(C) < 0:
                logger.debug("unloading %s from %s", C, a)
                a = a - C
                break
        else:
            return a
        if a.degree < 0:
            return a
    raise CatalogInsufficient(f"class did not stabilize after {cap} unloading steps")


def conditions_from_class(a: DivisorClass) -> list[BaseCondition]:
    """Base conditions for the positive multiplicities of ``a``."""
    cfg: BlowupConfiguration = a.config
    conds: list[BaseCondition] = []
    for c in cfg.centers:
        m = a.mult(c.label)
        if m <= 0:
            continue
        p, directions = cfg.chain(c.label)
        virtual: list[int] = []
        ancestor = c
        while ancestor.parent is not None:
            ancestor = cfg.center(ancestor.parent)
            virtual.append(a.mult(ancestor.label))
        virtual.reverse()
        if any(v <= 0 for v in virtual):
            raise CatalogInsufficient(
                f"E{c.label} carries multiplicity {m} but an ancestor does not; unload further"
            )
        conds.append(BaseCondition(p, m, tuple(directions), tuple(virtual)))
    return conds


def h0_class(a: DivisorClass, catalog: Sequence[DivisorClass] = (), cap: int = UNLOADING_CAP) -> int:
    """``h⁰`` of a class on the blow-up, after removing its fixed part."""
    if a.degree < 0:
        return 0
    a = unload(a, catalog, cap)
    if a.is_zero:
        return 1
    if a.degree < 0:
        return 0
    if a.degree == 0:
        return 1 if all(m <= 0 for m in a.mults) else 0
    conds = conditions_from_class(a)
    M = condition_matrix(a.degree, conds)
    h0 = M.cols - M.rank()
    logger.debug("h0(%s) = %d", a, h0)
    return h0
