"""Counting absolutely irreducible factors with a linear system.

For a squarefree ``F(x, y)`` of bidegree ``(m, n)`` with ``gcd(F, ∂F/∂x) = 1``,
the pairs ``(G, H)`` with ``deg G ≤ (m − 1, n)`` and ``deg H ≤ (m, n − 1)``
solving

    F·∂G/∂y − G·∂F/∂y − F·∂H/∂x + H·∂F/∂x = 0

form a space whose dimension is the number of absolutely irreducible factors
of ``F`` (Gao's partial-differential-equation criterion, a descendant of
Ruppert's).  The system is linear in the coefficients of ``G`` and ``H`` and
is solved exactly over Q(i), so no factoring over extensions is needed.

If ``F`` has a factor free of ``x`` the gcd condition fails; a seeded shear
``y → y + c·x`` removes that without changing the factor count.
"""

from __future__ import annotations

import logging

import numpy as np

from surfcover.algebra.exactfield import ExactMatrix
from surfcover.algebra.poly import AFFINE_VARS, MultiPoly
from surfcover.algebra.resultant import gcd_bivariate, is_squarefree
from surfcover.errors import InternalLimit, NotSquarefree

logger = logging.getLogger(__name__)

SHEAR_ATTEMPTS = 8


def _affine_part(F: MultiPoly) -> tuple[MultiPoly, int]:
    """Dehomogenize a projective curve; also report whether the line z = 0 is a component."""
    if len(F.variables) == 2:
        return F, 0
    if len(F.variables) != 3 or not F.is_homogeneous():
        raise ValueError("expected an affine bivariate or a homogeneous ternary polynomial")
    z = F.variables[2]
    k = F.order_in(z)
    if k > 1:
        raise NotSquarefree("the line at infinity is a repeated component")
    affine = F.dehomogenize(z)
    return affine.rename(dict(zip(affine.variables, AFFINE_VARS))), k


def ruppert_matrix(F: MultiPoly) -> ExactMatrix:
    """Coefficient matrix of the linear map ``(G, H) ↦ F·G_y − G·F_y − F·H_x + H·F_x``."""
    xv, yv = F.variables
    m, n = F.degree_in(xv), F.degree_in(yv)
    Fx, Fy = F.differentiate(xv), F.differentiate(yv)
    columns: list[MultiPoly] = []
    for i in range(m):
        for j in range(n + 1):
            mono = MultiPoly.monomial((i, j), F.variables)
            columns.append(F * mono.differentiate(yv) - mono * Fy)
    for i in range(m + 1):
        for j in range(n):
            mono = MultiPoly.monomial((i, j), F.variables)
            columns.append(mono * Fx - F * mono.differentiate(xv))
    rows = sorted({e for col in columns for e in col.terms})
    if not rows:
        return ExactMatrix.zeros(0, len(columns)) if columns else ExactMatrix([], cols=0)
    index = {e: r for r, e in enumerate(rows)}
    entries = [[0] * len(columns) for _ in rows]
    for c, col in enumerate(columns):
        for e, coeff in col.items():
            entries[index[e]][c] = coeff
    return ExactMatrix(entries, cols=len(columns))


def _factor_count_affine(F: MultiPoly) -> int:
    xv, yv = F.variables
    if not F.involves(xv) and not F.involves(yv):
        return 0
    M = ruppert_matrix(F)
    count = M.cols - M.rank()
    logger.debug("factor-count system %dx%d: kernel %d", M.rows, M.cols, count)
    return count


def absolute_factor_count(F: MultiPoly, seed: int = 0) -> int:
    """Number of absolutely irreducible factors of a squarefree curve ``F``."""
    if not F:
        raise ValueError("the zero polynomial has no factorization")
    affine, at_infinity = _affine_part(F)
    if not is_squarefree(affine):
        raise NotSquarefree(f"polynomial has a repeated factor: {F}")
    xv, yv = affine.variables
    if affine.is_constant():
        return at_infinity
    rng = np.random.default_rng(seed)
    candidate = affine
    for attempt in range(SHEAR_ATTEMPTS + 1):
        if gcd_bivariate(candidate, candidate.differentiate(xv)).is_constant():
            return _factor_count_affine(candidate) + at_infinity
        c = int(rng.integers(1, 50))
        x, y = MultiPoly.gens(affine.variables)
        candidate = affine.substitute({yv: y + x * c})
        logger.debug("shear attempt %d with c=%d", attempt + 1, c)
    raise InternalLimit("no shear made gcd(F, dF/dx) trivial")


def is_absolutely_irreducible(F: MultiPoly, seed: int = 0) -> bool:
    return absolute_factor_count(F, seed) == 1
