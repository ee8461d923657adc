"""Transversality certificates for branch supports.

Two curves meet transversally away from a set of centers when, after a
generic projective change of coordinates, the resultant in ``y`` has degree
``deg F · deg G`` (nothing at infinity), the factors ``(x − x_c)^{I_c}`` of the
centers divide it exactly, and what is left is squarefree and vanishes at no
``x_c``.  Each simple root is then one transverse intersection point.

For three supports the residual resultants of the three pairs, taken in the
same coordinates, have a common root only if some point lies on all three;
a constant gcd certifies that no residual point is a triple point.

A change of coordinates that is not generic enough (a repeated root caused by
two points on one vertical line, or a center sharing its ``x`` with a residual
point) is retried with the next seeded matrix.  When every attempt fails the
rational common points are searched for a genuine contact; if none is found
the certificate is inconclusive.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from surfcover.algebra.exactfield import ONE, ZERO, GaussianRational
from surfcover.algebra.intersection import Infinite, intersection_multiplicity
from surfcover.algebra.poly import MultiPoly, PlanePoint
from surfcover.algebra.resultant import UPoly, gcd, resultant, u_divmod, u_eval, u_gcd, u_mul, squarefree_decomposition
from surfcover.errors import CertificateInconclusive
from surfcover.geometry.singularity import rational_common_points

logger = logging.getLogger(__name__)

DEFAULT_RETRIES = 4
RESULTANT_CACHE_SIZE = 256

NamedCurve = tuple[str, MultiPoly]


@dataclass
class Contact:
    """A non-transverse common point of two curves."""

    first: str
    second: str
    point: PlanePoint
    multiplicity: int | Infinite

    def to_json(self) -> dict:
        return {"curves": [self.first, self.second], "point": str(self.point), "multiplicity": str(self.multiplicity)}


@dataclass
class TransversalityCertificate:
    certified: bool
    residual_points: int = 0
    pair_counts: dict[tuple[str, str], int] = field(default_factory=dict)
    excluded: dict[tuple[str, str], dict[str, int]] = field(default_factory=dict)
    bezout: dict[tuple[str, str], int] = field(default_factory=dict)
    contacts: list[Contact] = field(default_factory=list)
    triple_free: bool | None = None
    attempts: int = 0
    reason: str = ""

    def to_json(self) -> dict:
        return {
            "certified": self.certified,
            "residual_points": self.residual_points,
            "pair_counts": {f"{a}·{b}": n for (a, b), n in self.pair_counts.items()},
            "excluded": {f"{a}·{b}": e for (a, b), e in self.excluded.items()},
            "bezout": {f"{a}·{b}": n for (a, b), n in self.bezout.items()},
            "contacts": [c.to_json() for c in self.contacts],
            "triple_free": self.triple_free,
            "attempts": self.attempts,
            "reason": self.reason,
        }


# ── coordinate changes ──────────────────────────────────────────────────────

def _det3(M: Sequence[Sequence[int]]) -> int:
    return (
        M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
        - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
        + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
    )


def random_change(rng: np.random.Generator) -> list[list[int]]:
    """Identity plus small seeded off-diagonal entries; always invertible."""
    while True:
        M = [[1 if i == j else int(rng.integers(-2, 3)) for j in range(3)] for i in range(3)]
        if _det3(M):
            return M


def apply_change(F: MultiPoly, M: Sequence[Sequence[int]]) -> MultiPoly:
    """``F(M·(x, y, z))``."""
    X = MultiPoly.gens(F.variables)
    images = {
        F.variables[r]: X[0] * M[r][0] + X[1] * M[r][1] + X[2] * M[r][2]
        for r in range(3)
    }
    return F.substitute(images)


def preimage(p: PlanePoint, M: Sequence[Sequence[int]]) -> PlanePoint:
    """``M⁻¹·p`` up to scale, via the adjugate."""
    adj = [
        [
            (M[(j + 1) % 3][(i + 1) % 3] * M[(j + 2) % 3][(i + 2) % 3]
             - M[(j + 1) % 3][(i + 2) % 3] * M[(j + 2) % 3][(i + 1) % 3])
            for j in range(3)
        ]
        for i in range(3)
    ]
    c = p.normalized
    return PlanePoint(*(sum((c[j] * adj[i][j] for j in range(3)), ZERO) for i in range(3)))


# ── one pair in one coordinate system ───────────────────────────────────────

@lru_cache(maxsize=RESULTANT_CACHE_SIZE)
def _changed_resultant(F: MultiPoly, G: MultiPoly, M: tuple[tuple[int, ...], ...]) -> UPoly | None:
    """Res_y of the affine parts of ``F`` and ``G`` in the coordinates ``M``.

    None when a leading coefficient in ``y`` is not a constant of full degree.
    Memoised per (pair, matrix); callers must not mutate the returned list.
    """
    dF, dG = F.degree(), G.degree()
    Fa = apply_change(F, M).dehomogenize(F.variables[2])
    Ga = apply_change(G, M).dehomogenize(G.variables[2])
    xv, yv = Fa.variables
    if Fa.degree_in(yv) != dF or Ga.degree_in(yv) != dG:
        return None
    if not Fa.leading_coefficient_in(yv).is_constant() or not Ga.leading_coefficient_in(yv).is_constant():
        return None
    R = resultant(Fa, Ga, yv)
    if not R:
        return None
    return R.to_univariate(xv) if R.involves(xv) else [R.constant_term()]


def _pair_residual(
    F: MultiPoly,
    G: MultiPoly,
    M: Sequence[Sequence[int]],
    excluded: Sequence[tuple[PlanePoint, int]],
) -> UPoly | None:
    """Residual resultant after removing the centers, or None if ``M`` is not generic here."""
    dF, dG = F.degree(), G.degree()
    cached = _changed_resultant(F, G, tuple(tuple(row) for row in M))
    if cached is None:
        return None
    r = list(cached)
    if len(r) - 1 != dF * dG:
        return None
    xs: list[GaussianRational] = []
    for c, multiplicity in excluded:
        q = preimage(c, M)
        if not q.is_affine():
            return None
        xc = q.affine()[0]
        factor = _linear_power(xc, multiplicity)
        quotient, rem = u_divmod(r, factor)
        if rem:
            return None
        r = quotient
        xs.append(xc)
    if any(not u_eval(r, xc) for xc in xs):
        return None
    return r


def _linear_power(root: GaussianRational, power: int) -> UPoly:
    out: UPoly = [ONE]
    for _ in range(power):
        out = u_mul(out, [-root, ONE])
    return out


def _is_squarefree(r: UPoly) -> bool:
    if len(r) <= 2:
        return True
    return all(k == 1 for _, k in squarefree_decomposition(r))


def _shared_centers(F: MultiPoly, G: MultiPoly, centers: Sequence[PlanePoint]) -> list[tuple[PlanePoint, int | Infinite]]:
    return [(c, intersection_multiplicity(F, G, c)) for c in centers if c.lies_on(F) and c.lies_on(G)]


def _contacts(a: NamedCurve, b: NamedCurve, centers: Sequence[PlanePoint]) -> list[Contact]:
    pts, _ = rational_common_points([a[1], b[1]])
    out = []
    for p in pts:
        if p in centers:
            continue
        i = intersection_multiplicity(a[1], b[1], p)
        if isinstance(i, Infinite) or i >= 2:
            out.append(Contact(a[0], b[0], p, i))
    return out


# ═══════════════════════════════════════════════════════════════════════════
# Certificates
# ═══════════════════════════════════════════════════════════════════════════

def branch_certificate(
    supports: Sequence[Sequence[NamedCurve]],
    excluded_centers: Sequence[PlanePoint] = (),
    seed: int = 0,
    retries: int = DEFAULT_RETRIES,
) -> TransversalityCertificate:
    """Certify curves of different supports meet transversally off the centers.

    With three supports the certificate also states whether a residual point
    lies on all three.
    """
    centers = list(excluded_centers)
    pairs = [
        (g, j, a, b)
        for g in range(len(supports))
        for j in range(g + 1, len(supports))
        for a in supports[g]
        for b in supports[j]
    ]
    cert = TransversalityCertificate(certified=False)
    shared: dict[tuple[str, str], list[tuple[PlanePoint, int]]] = {}
    for _, _, a, b in pairs:
        key = (a[0], b[0])
        if not gcd(a[1], b[1]).is_constant():
            cert.reason = f"{a[0]} and {b[0]} share a component"
            return cert
        here = _shared_centers(a[1], b[1], centers)
        shared[key] = [(c, int(i)) for c, i in here]
        cert.excluded[key] = {str(c): int(i) for c, i in here}
        cert.bezout[key] = a[1].degree() * b[1].degree()

    rng = np.random.default_rng(seed)
    for attempt in range(1, retries + 1):
        cert.attempts = attempt
        M = random_change(rng)
        residuals: dict[tuple[str, str], UPoly] = {}
        generic = True
        for _, _, a, b in pairs:
            r = _pair_residual(a[1], b[1], M, shared[(a[0], b[0])])
            if r is None or not _is_squarefree(r):
                generic = False
                break
            residuals[(a[0], b[0])] = r
        if not generic:
            logger.debug("coordinate change %s not generic, retrying", M)
            continue
        by_support: dict[tuple[int, int], UPoly] = {}
        for g, j, a, b in pairs:
            acc = by_support.get((g, j), [ONE])
            by_support[(g, j)] = u_mul(acc, residuals[(a[0], b[0])])
        if any(not _is_squarefree(r) for r in by_support.values()):
            continue
        triple_free: bool | None = None
        if len(supports) >= 3:
            common: UPoly = []
            for r in by_support.values():
                common = u_gcd(common, r)
            triple_free = len(common) <= 1
            if not triple_free:
                continue
        cert.certified = True
        cert.triple_free = triple_free
        cert.pair_counts = {k: len(r) - 1 for k, r in residuals.items()}
        cert.residual_points = sum(cert.pair_counts.values())
        logger.debug("transversality certified after %d attempt(s): %d residual points", attempt, cert.residual_points)
        return cert

    for _, _, a, b in pairs:
        cert.contacts.extend(_contacts(a, b, centers))
    if cert.contacts:
        cert.reason = "non-transverse contact"
        return cert
    raise CertificateInconclusive(f"no generic coordinate change found in {retries} attempts")


def transversality_certificate(
    curves: Sequence[MultiPoly],
    excluded_centers: Sequence[PlanePoint] = (),
    seed: int = 0,
    retries: int = DEFAULT_RETRIES,
) -> TransversalityCertificate:
    """Every pair of ``curves`` meets transversally outside ``excluded_centers``."""
    supports = [[(f"C{k}", F)] for k, F in enumerate(curves)]
    return branch_certificate(supports, excluded_centers, seed, retries)
