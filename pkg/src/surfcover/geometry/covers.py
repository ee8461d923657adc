"""Invariants of double and bidouble covers, and intersection bookkeeping on them.

Double cover S → X branched on B + ΣA_i ≡ 2L, with the A_i disjoint
(−2)-curves and B containing one (3,3)-point and no other singularity::

    χ(O_S) = 2χ(O_X) + ½(L² + L·K_X) − 1
    K_S²   = 2(K_X + L)² + n − 1

The −1 in both comes from the (3,3)-point; the +n from contracting the
(−1)-curves over the A_i.

Bidouble cover V → X with data (D_g, L_g)::

    χ(O_V)  = 4χ(O_X) + ½ Σ L_g·(K_X + L_g)
    p_g(V)  = p_g(X) + Σ h⁰(K_X + L_g)
    K_V²    = (2K_X + Σ L_g)²

Double cover branched on B ≡ 2M::

    χ = 2χ(O_X) + ½ M·(K_X + M),  p_g = p_g(X) + h⁰(K_X + M),  K² = 2(K_X + M)²

Cover lattice
-------------
Classes on the cover are handled through declared generators.  A generator
is a piece of the pullback of a base class ``A``: ``π*A = r·(A_1 + … + A_k)``
with ``k`` pieces of ramification ``r`` (a plain pullback is ``k = r = 1``, a
reduced branch component ``k = 1, r = 2``).  The projection formula
``π*A·π*B = deg·A·B`` with symmetric pieces gives

    A_j·B_l = deg·A·B / (k_A r_A k_B r_B),     A_j² = deg·A² / (k r²),

and distinct pieces of one pullback are disjoint.  Contracting disjoint
(−1)-curves ``c`` changes the pairing to ``a·b + Σ_c (a·c)(b·c)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from pydantic import BaseModel, Field

from surfcover.errors import BranchContractViolated, InconsistentDeclaration
from surfcover.geometry.linsys import UNLOADING_CAP, h0_class
from surfcover.geometry.picard import (
    BlowupConfiguration,
    DivisorClass,
    check_bidouble_data,
    class_sum,
)

logger = logging.getLogger(__name__)


# ═══════════════════════════════════════════════════════════════════════════
# Invariant formulas
# ═══════════════════════════════════════════════════════════════════════════

class SurfaceInvariants(BaseModel):
    """Holomorphic Euler characteristic, geometric genus and K²."""

    chi: int = Field(..., description="χ(O_S)")
    pg: Optional[int] = Field(None, description="Geometric genus; None when the formula does not give it")
    Ksq: int = Field(..., description="K² of the cover as constructed")
    Ksq_min: Optional[int] = Field(None, description="K² after contracting the declared (−1)-curves")


class AmbientType(str, Enum):
    ABELIAN = "abelian"
    K3 = "k3"
    ENRIQUES = "enriques"


# number of disjoint (−2)-curves in the branch locus for each ambient surface
AMBIENT_NODE_COUNT = {AmbientType.ABELIAN: 0, AmbientType.K3: 16, AmbientType.ENRIQUES: 8}
AMBIENT_CHI = {AmbientType.ABELIAN: 0, AmbientType.K3: 2, AmbientType.ENRIQUES: 1}


class Prop1Input(BaseModel):
    """Branch data of a double cover of an abelian, K3 or Enriques surface."""

    ambient: AmbientType
    chi_X: int = Field(..., description="χ(O_X) of the ambient surface")
    n: int = Field(..., ge=0, description="Number of disjoint (−2)-curves A_i in the branch locus")
    L_sq: int = Field(..., description="L²")
    L_dot_K: int = Field(0, description="L·K_X (K_X is numerically trivial on all three ambients)")
    K_X_sq: int = Field(0, description="K_X²")
    branch_square: int = Field(16, description="B²")
    branch_even: bool = Field(True, description="B + ΣA_i ≡ 2L holds")
    branch_disjoint: bool = Field(True, description="B is disjoint from every A_i")
    points_33: int = Field(1, ge=0, description="Number of (3,3)-points of B")
    other_singularities: int = Field(0, ge=0, description="Singular points of B other than the (3,3)-point")


def prop1_violations(data: Prop1Input) -> list[str]:
    problems = []
    expected_n = AMBIENT_NODE_COUNT[data.ambient]
    if data.n != expected_n:
        problems.append(f"n = {data.n} but a {data.ambient.value} ambient needs n = {expected_n}")
    if data.chi_X != AMBIENT_CHI[data.ambient]:
        problems.append(f"χ(O_X) = {data.chi_X} does not match a {data.ambient.value} surface")
    if 4 * data.L_sq != 16 - 2 * data.n:
        problems.append(f"(2L)² = {4 * data.L_sq} but B² + ΣA_i² = {16 - 2 * data.n}")
    if data.branch_square != 16:
        problems.append(f"B² = {data.branch_square}, expected 16")
    if not data.branch_even:
        problems.append("branch class is not divisible by 2")
    if not data.branch_disjoint:
        problems.append("B meets the (−2)-curves")
    if data.points_33 != 1 or data.other_singularities:
        problems.append(f"B needs exactly one (3,3)-point and no other singularity "
                        f"(got {data.points_33} and {data.other_singularities} others)")
    if (data.L_sq + data.L_dot_K) % 2:
        problems.append("L·(K_X + L) is odd")
    return problems


def prop1_invariants(data: Prop1Input) -> SurfaceInvariants:
    problems = prop1_violations(data)
    if problems:
        raise BranchContractViolated("; ".join(problems))
    chi = 2 * data.chi_X + (data.L_sq + data.L_dot_K) // 2 - 1
    KL_sq = data.K_X_sq + 2 * data.L_dot_K + data.L_sq
    Ksq = 2 * KL_sq + data.n - 1
    return SurfaceInvariants(chi=chi, Ksq=Ksq, Ksq_min=Ksq)


def bidouble_invariants(
    Ds: Sequence[DivisorClass],
    Ls: Sequence[DivisorClass],
    cfg: BlowupConfiguration,
    catalog: Sequence[DivisorClass] = (),
    chi_X: int = 1,
    pg_X: int = 0,
    unloading_cap: int = UNLOADING_CAP,
) -> tuple[SurfaceInvariants, list[int]]:
    """Invariants of the bidouble cover and the ``h⁰(K_X + L_g)`` terms."""
    report = check_bidouble_data(Ds, Ls)
    if not report.holds:
        failed = ", ".join(c.name for c in report.checks if not c.holds)
        raise BranchContractViolated(f"bidouble data fail: {failed}")
    K = cfg.canonical_class()
    twice = sum(L.dot(K + L) for L in Ls)
    if twice % 2:
        raise BranchContractViolated("Σ L_g·(K_X + L_g) is odd")
    h0s = [h0_class(K + L, catalog, unloading_cap) for L in Ls]
    chi = 4 * chi_X + twice // 2
    Ksq = (K * 2 + class_sum(Ls, cfg)).square
    logger.info("bidouble cover: chi=%d pg=%d K^2=%d", chi, pg_X + sum(h0s), Ksq)
    return SurfaceInvariants(chi=chi, pg=pg_X + sum(h0s), Ksq=Ksq), h0s


def double_cover_invariants(
    M: DivisorClass,
    cfg: BlowupConfiguration,
    catalog: Sequence[DivisorClass] = (),
    chi_X: int = 1,
    pg_X: int = 0,
    unloading_cap: int = UNLOADING_CAP,
) -> SurfaceInvariants:
    K = cfg.canonical_class()
    twice = M.dot(K + M)
    if twice % 2:
        raise BranchContractViolated("M·(K_X + M) is odd")
    pg = pg_X + h0_class(K + M, catalog, unloading_cap)
    return SurfaceInvariants(chi=2 * chi_X + twice // 2, pg=pg, Ksq=2 * (K + M).square)


def minimal_model_Ksq(Ksq: int, contracted: int) -> int:
    if contracted < 0:
        raise ValueError("cannot contract a negative number of curves")
    return Ksq + contracted


# ═══════════════════════════════════════════════════════════════════════════
# Cover lattice
# ═══════════════════════════════════════════════════════════════════════════

class GeneratorKind(str, Enum):
    PULLBACK = "pullback"
    REDUCED = "reduced"
    SPLIT = "split"


@dataclass(frozen=True)
class GeneratorSpec:
    """One declared class on the cover: piece ``piece`` of ``π*base = r·Σ pieces``."""

    label: str
    base: DivisorClass
    kind: GeneratorKind = GeneratorKind.PULLBACK
    pieces: int = 1
    ramification: int = 1
    family: str | None = None
    piece: int = 1

    @classmethod
    def pullback(cls, label: str, base: DivisorClass) -> GeneratorSpec:
        return cls(label, base, GeneratorKind.PULLBACK, 1, 1)

    @classmethod
    def reduced(cls, label: str, base: DivisorClass) -> GeneratorSpec:
        return cls(label, base, GeneratorKind.REDUCED, 1, 2)

    @classmethod
    def split(cls, label: str, base: DivisorClass, family: str, piece: int, pieces: int = 2, ramification: int = 1) -> GeneratorSpec:
        return cls(label, base, GeneratorKind.SPLIT, pieces, ramification, family, piece)

    @property
    def family_key(self) -> str:
        return self.family or self.label

    @property
    def weight(self) -> int:
        return self.pieces * self.ramification


CoverClass = Mapping[str, int]


@dataclass
class CoverLattice:
    """Declared generators with their exact Gram matrix and contracted curves."""

    degree: int
    generators: list[GeneratorSpec]
    gram: dict[tuple[str, str], int]
    contracted: list[str] = field(default_factory=list)

    @property
    def labels(self) -> list[str]:
        return [g.label for g in self.generators]

    def generator(self, label: str) -> GeneratorSpec:
        for g in self.generators:
            if g.label == label:
                return g
        raise KeyError(label)

    def pair(self, a: CoverClass | str, b: CoverClass | str) -> int:
        a, b = _as_class(a), _as_class(b)
        return sum(x * y * self.gram[(p, q)] for p, x in a.items() for q, y in b.items())

    def square(self, a: CoverClass | str) -> int:
        return self.pair(a, a)

    def contracted_pair(self, a: CoverClass | str, b: CoverClass | str) -> int:
        """``a·b + Σ_c (a·c)(b·c)`` over the contracted (−1)-curves ``c``."""
        return self.pair(a, b) + sum(self.pair(a, c) * self.pair(b, c) for c in self.contracted)

    def contracted_self_intersection(self, a: CoverClass | str) -> int:
        return self.contracted_pair(a, a)

    def contraction_record(self, a: CoverClass | str) -> dict[str, int]:
        """Multiplicities of ``a`` at each contracted curve (its intersection numbers)."""
        return {c: self.pair(a, c) for c in self.contracted}

    def is_symmetric(self) -> bool:
        return all(self.gram[(p, q)] == self.gram[(q, p)] for p in self.labels for q in self.labels)


def _as_class(a: CoverClass | str) -> dict[str, int]:
    return {a: 1} if isinstance(a, str) else dict(a)


def _pairing(a: GeneratorSpec, b: GeneratorSpec, degree: int) -> int:
    base = a.base.dot(b.base)
    if a.label == b.label:
        value = Fraction(degree * base, a.pieces * a.ramification ** 2)
    elif a.family_key == b.family_key:
        return 0
    else:
        value = Fraction(degree * base, a.weight * b.weight)
    if value.denominator != 1:
        raise InconsistentDeclaration(
            f"{a.label}·{b.label} = {value} is not an integer; the declared splitting is impossible"
        )
    return int(value)


def cover_gram(
    generators: Sequence[GeneratorSpec],
    cover_degree: int,
    overrides: Mapping[tuple[str, str], int] | None = None,
    contracted: Sequence[str] = (),
) -> CoverLattice:
    """Gram matrix of the declared generators from base pairings.

    ``overrides`` replace the symmetric-splitting value for a pair of pieces
    whose incidence is known to be uneven; the totals over each family must
    still satisfy the projection formula.
    """
    if cover_degree not in (2, 4):
        raise InconsistentDeclaration(f"cover degree {cover_degree} is not 2 or 4")
    labels = [g.label for g in generators]
    if len(set(labels)) != len(labels):
        raise InconsistentDeclaration("generator labels repeat")
    overrides = dict(overrides or {})
    gram: dict[tuple[str, str], int] = {}
    for a in generators:
        for b in generators:
            key = (a.label, b.label)
            if key in overrides or key[::-1] in overrides:
                gram[key] = overrides.get(key, overrides.get(key[::-1]))
            else:
                gram[key] = _pairing(a, b, cover_degree)
    _validate_families(generators, gram, cover_degree)
    missing = [c for c in contracted if c not in labels]
    if missing:
        raise InconsistentDeclaration(f"contracted curves are not generators: {missing}")
    for c in contracted:
        if gram[(c, c)] != -1:
            raise InconsistentDeclaration(f"contracted curve {c} has square {gram[(c, c)]}, not −1")
    for i, c in enumerate(contracted):
        for d in contracted[i + 1:]:
            if gram[(c, d)]:
                raise InconsistentDeclaration(f"contracted curves {c} and {d} meet")
    lattice = CoverLattice(cover_degree, list(generators), gram, list(contracted))
    logger.debug("cover lattice: %d generators, %d contracted", len(generators), len(contracted))
    return lattice


def _validate_families(generators: Sequence[GeneratorSpec], gram: Mapping[tuple[str, str], int], degree: int) -> None:
    """``π*A·π*B = deg·A·B`` summed over the pieces of every pair of complete families."""
    families: dict[str, list[GeneratorSpec]] = {}
    for g in generators:
        families.setdefault(g.family_key, []).append(g)
    complete = {k: v for k, v in families.items() if len(v) == v[0].pieces}
    for ka, fa in complete.items():
        for kb, fb in complete.items():
            total = sum(gram[(a.label, b.label)] * a.ramification * b.ramification for a in fa for b in fb)
            expected = degree * fa[0].base.dot(fb[0].base)
            if total != expected:
                raise InconsistentDeclaration(
                    f"pieces of {ka} and {kb} pair to {total}, projection formula wants {expected}"
                )


def class_identity_mismatches(lat: CoverLattice, lhs: CoverClass, rhs: CoverClass) -> list[str]:
    """Generators against which ``lhs`` and ``rhs`` pair differently."""
    return [g for g in lat.labels if lat.pair(lhs, g) != lat.pair(rhs, g)]


def verify_class_identity(lat: CoverLattice, lhs: CoverClass, rhs: CoverClass) -> bool:
    return not class_identity_mismatches(lat, lhs, rhs)


def pairs_evenly(lat: CoverLattice, a: CoverClass, contracted: bool = False) -> dict[str, int]:
    """Pairings of ``a`` with every generator that are odd (empty dict when all are even)."""
    pair = lat.contracted_pair if contracted else lat.pair
    return {g: pair(a, g) for g in lat.labels if pair(a, g) % 2}
