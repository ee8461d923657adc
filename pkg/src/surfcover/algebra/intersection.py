"""Local intersection multiplicities by Fulton's reduction.

Both curves are moved to local coordinates ``(u, v)`` with the point at the
origin, then reduced with the rules

* ``I(F, G) = 0`` if either curve misses the origin;
* ``I(F, G) = I(F, G + A·F)`` and ``I(F, G) = I(F, a·G)`` for constants ``a ≠ 0``;
* if ``v`` divides ``F`` then ``I(F, G) = ord_u G(u, 0) + I(F / v, G)``.

With ``r = deg F(u, 0)`` and ``s = deg G(u, 0)`` and ``r ≤ s``, replacing
``G`` by ``lc·G − u^(s−r)·lc'·F`` lowers ``s``; eventually one side is
divisible by ``v``.  If both are, the curves share the component ``v = 0``
through the point and the multiplicity is infinite.
"""

from __future__ import annotations

import logging

from surfcover.algebra.poly import LOCAL_VARS, MultiPoly, PlanePoint, localize
from surfcover.errors import InternalLimit

logger = logging.getLogger(__name__)


class Infinite:
    """Marker for an infinite intersection multiplicity (common component)."""

    _instance: Infinite | None = None

    def __new__(cls) -> Infinite:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Infinite"

    __str__ = __repr__

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Infinite)

    def __hash__(self) -> int:
        return hash("Infinite")

    def __gt__(self, other: object) -> bool:
        return isinstance(other, int)

    def __ge__(self, other: object) -> bool:
        return isinstance(other, (int, Infinite))

    def __lt__(self, other: object) -> bool:
        return False

    def __le__(self, other: object) -> bool:
        return isinstance(other, Infinite)


INFINITE = Infinite()


def _restrict_v0(F: MultiPoly) -> MultiPoly:
    """``F(u, 0)`` as a polynomial in ``(u, v)``."""
    return MultiPoly(F.variables, {e: c for e, c in F.items() if e[1] == 0})


def local_intersection(F: MultiPoly, G: MultiPoly, step_cap: int | None = None) -> int | Infinite:
    """``I_O(F, G)`` for local equations in ``(u, v)`` at the origin."""
    if F.variables != LOCAL_VARS or G.variables != LOCAL_VARS:
        F, G = F.with_variables(LOCAL_VARS), G.with_variables(LOCAL_VARS)
    if not F or not G:
        return INFINITE
    cap = step_cap if step_cap is not None else 4 * max(F.degree(), 1) * max(G.degree(), 1)
    v = MultiPoly.var("v", LOCAL_VARS)
    total = 0
    steps = 0
    while True:
        if not F or not G:
            return INFINITE
        if F.constant_term() or G.constant_term():
            return total
        f0, g0 = _restrict_v0(F), _restrict_v0(G)
        if not f0 and not g0:
            return INFINITE
        if not f0 or not g0:
            if not g0:
                F, G, f0, g0 = G, F, g0, f0
            # v | F: split off I(v, G) = ord_u G(u, 0)
            total += g0.order()
            F = F.exact_div(v)
            steps = 0
            continue
        r, s = f0.degree(), g0.degree()
        if r > s:
            F, G, f0, g0, r, s = G, F, g0, f0, s, r
        a = f0.coefficient((r, 0))
        b = g0.coefficient((s, 0))
        G = G * a - F.shift((s - r, 0)) * b
        steps += 1
        if steps > cap:
            raise InternalLimit(f"intersection reduction exceeded {cap} steps")


def intersection_multiplicity(F: MultiPoly, G: MultiPoly, p: PlanePoint) -> int | Infinite:
    """``I_p(F, G)`` for plane curves; infinite iff they share a component through ``p``."""
    if not F or not G:
        raise ValueError("intersection multiplicity needs nonzero polynomials")
    cap = 4 * max(F.degree(), 1) * max(G.degree(), 1)
    result = local_intersection(localize(F, p), localize(G, p), step_cap=cap)
    logger.debug("I_%s = %s", p, result)
    return result
