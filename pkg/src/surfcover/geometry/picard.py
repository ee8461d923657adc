"""Divisor classes on a blow-up of the projective plane.

A configuration is an ordered list of centers: proper points of the plane and
points infinitely near an earlier center, given by the parent and a tangent
direction in the parent's local chart.  Classes are written in the
orthogonal basis of the pulled-back line class ``T`` and the total
transforms ``E_c`` of the exceptional curves:

    a = d·T − Σ m_c·E_c,        T² = 1,  E_c² = −1,  all mixed products 0.

So ``E_c`` itself has ``m_c = −1``.  The canonical class is
``K = −3T + Σ E_c`` and ``K² = 9 − #centers``.

Proximity: a center ``q`` is proximate to ``p`` when ``q`` lies on the strict
transform of the exceptional curve of ``p``.  The strict transform of that
exceptional curve is ``E_p − Σ_{q proximate to p} E_q``.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

from surfcover.algebra.exactfield import ExactMatrix
from surfcover.algebra.poly import LOCAL_VARS, MultiPoly, PlanePoint
from surfcover.errors import ConfigMismatch, NotEven, ParseError
from surfcover.geometry.singularity import (
    SLOPE_ZERO,
    VERTICAL,
    Direction,
    axis_direction,
    chain_multiplicities,
    strict_transform,
)

logger = logging.getLogger(__name__)


# ═══════════════════════════════════════════════════════════════════════════
# Configurations
# ═══════════════════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class Center:
    """A blown-up point: proper (``point`` set) or infinitely near ``parent`` in ``direction``."""

    label: str
    point: PlanePoint | None = None
    parent: str | None = None
    direction: Direction | None = None

    def __post_init__(self) -> None:
        if (self.point is None) == (self.parent is None):
            raise ValueError(f"center {self.label!r} needs exactly one of point / parent")
        if self.parent is not None and self.direction is None:
            raise ValueError(f"infinitely near center {self.label!r} needs a direction")

    @property
    def is_proper(self) -> bool:
        return self.point is not None


class BlowupConfiguration:
    """Ordered centers with proximity derived from the chain structure."""

    def __init__(self, centers: Sequence[Center]) -> None:
        self.centers: tuple[Center, ...] = tuple(centers)
        self.labels: tuple[str, ...] = tuple(c.label for c in self.centers)
        self._index = {lab: k for k, lab in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            raise ValueError("center labels must be distinct")
        for c in self.centers:
            if c.parent is not None and (c.parent not in self._index or self._index[c.parent] >= self._index[c.label]):
                raise ValueError(f"parent of {c.label!r} must be an earlier center")
        self._passing = self._exceptional_through_centers()

    # ── structure ───────────────────────────────────────────────────────────

    def __len__(self) -> int:
        return len(self.centers)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BlowupConfiguration) and self.centers == other.centers

    def __hash__(self) -> int:
        return hash(self.centers)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ConfigMismatch(f"no center labelled {label!r}") from None

    def center(self, label: str) -> Center:
        return self.centers[self.index(label)]

    def children(self, label: str) -> list[Center]:
        return [c for c in self.centers if c.parent == label]

    def chain(self, label: str) -> tuple[PlanePoint, list[Direction]]:
        """The proper point under ``label`` and the directions leading up to it."""
        directions: list[Direction] = []
        c = self.center(label)
        while c.parent is not None:
            directions.append(c.direction)
            c = self.center(c.parent)
        return c.point, directions[::-1]

    def _exceptional_through_centers(self) -> dict[str, dict[str, MultiPoly]]:
        """For each center, local equations of the exceptional curves passing through it."""
        u, v = MultiPoly.gens(LOCAL_VARS)
        passing: dict[str, dict[str, MultiPoly]] = {}
        for c in self.centers:
            if c.parent is None:
                passing[c.label] = {}
                continue
            d = c.direction
            here: dict[str, MultiPoly] = {}
            for lab, e in passing[c.parent].items():
                if axis_direction(e) == d:
                    here[lab] = strict_transform(e, d, 1)
            here[c.parent] = v if d.is_vertical else u
            passing[c.label] = here
        return passing

    def proximate(self, label: str) -> list[str]:
        """Labels of the centers whose exceptional curves pass through ``label``."""
        return sorted(self._passing[label], key=self.index)

    def is_satellite(self, label: str) -> bool:
        return len(self._passing[label]) >= 2

    def proximity_matrix(self) -> ExactMatrix:
        """``P[i][i] = 1`` and ``P[i][j] = −1`` when center i is proximate to center j."""
        n = len(self)
        rows = [[0] * n for _ in range(n)]
        for i, lab in enumerate(self.labels):
            rows[i][i] = 1
            for q in self._passing[lab]:
                rows[i][self.index(q)] = -1
        return ExactMatrix(rows, cols=n)

    def exceptional_direction(self, label: str, at: str) -> Direction:
        """Direction at center ``at`` of the exceptional curve of ``label``."""
        return axis_direction(self._passing[at][label])

    # ── classes ─────────────────────────────────────────────────────────────

    def zero(self) -> DivisorClass:
        return DivisorClass(self, 0, (0,) * len(self))

    def T(self, degree: int = 1) -> DivisorClass:
        return DivisorClass(self, degree, (0,) * len(self))

    def E(self, label: str) -> DivisorClass:
        mults = [0] * len(self)
        mults[self.index(label)] = -1
        return DivisorClass(self, 0, tuple(mults))

    def cls(self, degree: int, mults: Mapping[str, int] | None = None) -> DivisorClass:
        """``degree·T − Σ mults[c]·E_c``."""
        vec = [0] * len(self)
        for lab, m in (mults or {}).items():
            vec[self.index(lab)] = m
        return DivisorClass(self, degree, tuple(vec))

    def exceptional_strict(self, label: str) -> DivisorClass:
        """Strict transform of the exceptional curve of ``label``."""
        a = self.E(label)
        for other in self.labels:
            if label in self._passing[other]:
                a = a - self.E(other)
        return a

    def canonical_class(self) -> DivisorClass:
        return DivisorClass(self, -3, (-1,) * len(self))

    def parse_class(self, text: str) -> DivisorClass:
        return parse_class(text, self)

    def strict_transform_class(self, F: MultiPoly) -> DivisorClass:
        return strict_transform_class(F, self)


# ═══════════════════════════════════════════════════════════════════════════
# Divisor classes
# ═══════════════════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class DivisorClass:
    """``degree·T − Σ mults[k]·E_k`` on a fixed configuration."""

    config: BlowupConfiguration = field(compare=False, repr=False)
    degree: int
    mults: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.mults) != len(self.config):
            raise ConfigMismatch("class vector length differs from the number of centers")

    def _check(self, other: DivisorClass) -> None:
        if not isinstance(other, DivisorClass):
            raise TypeError(f"expected a DivisorClass, got {type(other).__name__}")
        if self.config is not other.config and self.config != other.config:
            raise ConfigMismatch("classes live on different blow-up configurations")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DivisorClass):
            return NotImplemented
        self._check(other)
        return self.degree == other.degree and self.mults == other.mults

    def __hash__(self) -> int:
        return hash((self.degree, self.mults))

    def __add__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(self.config, self.degree + other.degree, tuple(a + b for a, b in zip(self.mults, other.mults)))

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        return self + (-other)

    def __neg__(self) -> DivisorClass:
        return DivisorClass(self.config, -self.degree, tuple(-m for m in self.mults))

    def __mul__(self, k: int) -> DivisorClass:
        if not isinstance(k, int):
            return NotImplemented
        return DivisorClass(self.config, self.degree * k, tuple(m * k for m in self.mults))

    __rmul__ = __mul__

    def mult(self, label: str) -> int:
        return self.mults[self.config.index(label)]

    def dot(self, other: DivisorClass) -> int:
        return intersection_number(self, other)

    @property
    def square(self) -> int:
        return intersection_number(self, self)

    @property
    def is_zero(self) -> bool:
        return self.degree == 0 and not any(self.mults)

    def positive_part(self) -> dict[str, int]:
        return {lab: m for lab, m in zip(self.config.labels, self.mults) if m > 0}

    def __str__(self) -> str:
        parts: list[str] = []
        if self.degree:
            parts.append(_term(self.degree, "T"))
        for lab, m in zip(self.config.labels, self.mults):
            if m:
                parts.append(_term(-m, f"E{lab}"))
        if not parts:
            return "0"
        text = parts[0]
        for p in parts[1:]:
            text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return text

    def to_json(self) -> dict[str, Any]:
        return {
            "degree": self.degree,
            "mults": [{"center": f"E{lab}", "mult": m} for lab, m in zip(self.config.labels, self.mults)],
        }


def _term(coeff: int, symbol: str) -> str:
    if coeff == 1:
        return symbol
    if coeff == -1:
        return f"-{symbol}"
    return f"{coeff}{symbol}"


def intersection_number(a: DivisorClass, b: DivisorClass) -> int:
    """``d_a·d_b − Σ m_a·m_b``."""
    a._check(b)
    return a.degree * b.degree - sum(x * y for x, y in zip(a.mults, b.mults))


def canonical_class(cfg: BlowupConfiguration) -> DivisorClass:
    return cfg.canonical_class()


def arithmetic_genus(c: DivisorClass) -> int:
    """Adjunction: ``p_a = C·(C + K)/2 + 1``."""
    return c.dot(c + c.config.canonical_class()) // 2 + 1


def is_even(a: DivisorClass) -> bool:
    return a.degree % 2 == 0 and all(m % 2 == 0 for m in a.mults)


def halve(a: DivisorClass) -> DivisorClass:
    if not is_even(a):
        raise NotEven(f"{a} is not divisible by 2")
    return DivisorClass(a.config, a.degree // 2, tuple(m // 2 for m in a.mults))


def class_sum(classes: Iterable[DivisorClass], cfg: BlowupConfiguration) -> DivisorClass:
    acc = cfg.zero()
    for c in classes:
        acc = acc + c
    return acc


# ── text form ───────────────────────────────────────────────────────────────

_CLASS_TERM = re.compile(r"\s*([+-])?\s*(\d*)\s*\*?\s*(T|K|E[0-9A-Za-z_]+'*)\s*")


def parse_class(text: str, cfg: BlowupConfiguration) -> DivisorClass:
    """Parse ``"8T - 4E0 - 2E1' + E5"``; ``K`` stands for the canonical class."""
    acc = cfg.zero()
    pos = 0
    stripped = text.strip()
    if stripped == "0":
        return acc
    first = True
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _CLASS_TERM.match(text, pos)
        if m is None or (not first and m.group(1) is None):
            raise ParseError(f"cannot read a class term at position {pos}", pos, "[+|-] [integer] T, K or E<label>")
        sign = -1 if m.group(1) == "-" else 1
        coeff = sign * (int(m.group(2)) if m.group(2) else 1)
        symbol = m.group(3)
        if symbol == "T":
            term = cfg.T()
        elif symbol == "K":
            term = cfg.canonical_class()
        else:
            label = symbol[1:]
            if label not in cfg.labels:
                raise ConfigMismatch(f"class mentions unknown center E{label}")
            term = cfg.E(label)
        acc = acc + term * coeff
        pos = m.end()
        first = False
    return acc


# ═══════════════════════════════════════════════════════════════════════════
# Curves to classes
# ═══════════════════════════════════════════════════════════════════════════

def strict_transform_class(F: MultiPoly, cfg: BlowupConfiguration) -> DivisorClass:
    """``deg F·T − Σ m_c·E_c`` with ``m_c`` the multiplicity of the iterated strict transform at ``c``."""
    mults: list[int] = []
    for c in cfg.centers:
        p, directions = cfg.chain(c.label)
        mults.append(chain_multiplicities(F, p, directions)[-1])
    a = DivisorClass(cfg, F.degree(), tuple(mults))
    logger.debug("strict transform of degree-%d curve: %s", F.degree(), a)
    return a


# ═══════════════════════════════════════════════════════════════════════════
# Bidouble cover data
# ═══════════════════════════════════════════════════════════════════════════

@dataclass
class IdentityCheck:
    name: str
    holds: bool
    lhs: str
    rhs: str


@dataclass
class BidoubleDataReport:
    checks: list[IdentityCheck] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.checks)


def check_bidouble_data(D: Sequence[DivisorClass], L: Sequence[DivisorClass]) -> BidoubleDataReport:
    """``L_g + D_g ≡ L_j + L_k`` and ``2L_g ≡ D_j + D_k`` for every permutation ``(g, j, k)``."""
    if len(D) != 3 or len(L) != 3:
        raise ValueError("bidouble data needs three branch classes and three L classes")
    report = BidoubleDataReport()
    for g, j, k in ((0, 1, 2), (1, 0, 2), (2, 0, 1)):
        lhs, rhs = L[g] + D[g], L[j] + L[k]
        report.checks.append(IdentityCheck(f"L{g + 1}+D{g + 1}=L{j + 1}+L{k + 1}", lhs == rhs, str(lhs), str(rhs)))
        lhs, rhs = L[g] * 2, D[j] + D[k]
        report.checks.append(IdentityCheck(f"2L{g + 1}=D{j + 1}+D{k + 1}", lhs == rhs, str(lhs), str(rhs)))
    return report


__all__ = [
    "BidoubleDataReport",
    "BlowupConfiguration",
    "Center",
    "DivisorClass",
    "IdentityCheck",
    "SLOPE_ZERO",
    "VERTICAL",
    "arithmetic_genus",
    "canonical_class",
    "check_bidouble_data",
    "class_sum",
    "halve",
    "intersection_number",
    "is_even",
    "parse_class",
    "strict_transform_class",
]
