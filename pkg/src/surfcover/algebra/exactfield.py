"""Exact arithmetic over Q and Q(i), plus dense exact linear algebra.

``Rational`` is :class:`fractions.Fraction` (always reduced, sign on the
numerator).  ``GaussianRational`` stores ``(a + b·i) / d`` as three integers
with ``d > 0`` and ``gcd(a, b, d) = 1``, so equality and hashing are
structural.  No floating point is used anywhere in this module.

``ExactMatrix`` row-reduces with the first nonzero entry of each column as
pivot, which makes ranks, RREFs and kernel bases deterministic.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence, Union

from surfcover.errors import DivisionByZero

logger = logging.getLogger(__name__)

Rational = Fraction

Scalar = Union[int, Fraction, "GaussianRational"]


# ═══════════════════════════════════════════════════════════════════════════
# Gaussian rationals
# ═══════════════════════════════════════════════════════════════════════════

class GaussianRational:
    """Exact element of Q(i).  Immutable."""

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0) -> None:
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        a = re.numerator * (d // re.denominator)
        b = im.numerator * (d // im.denominator)
        self._set(a, b, d)

    def _set(self, a: int, b: int, d: int) -> None:
        if a == 0 and b == 0:
            a, b, d = 0, 0, 1
        else:
            g = gcd(a, b, d)
            if g != 1:
                a //= g
                b //= g
                d //= g
        object.__setattr__(self, "_a", a)
        object.__setattr__(self, "_b", b)
        object.__setattr__(self, "_d", d)

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> GaussianRational:
        if d < 0:
            a, b, d = -a, -b, -d
        obj = object.__new__(cls)
        obj._set(a, b, d)
        return obj

    @classmethod
    def coerce(cls, value: Scalar) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, int):
            return cls._raw(value, 0, 1)
        if isinstance(value, Fraction):
            return cls._raw(value.numerator, 0, value.denominator)
        if isinstance(value, complex):
            raise TypeError("complex floats are not exact; build from Fractions")
        raise TypeError(f"cannot coerce {type(value).__name__} to GaussianRational")

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("GaussianRational is immutable")

    # ── parts ───────────────────────────────────────────────────────────────

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    @property
    def denominator(self) -> int:
        """Least positive integer ``d`` with ``d·self`` a Gaussian integer."""
        return self._d

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def is_real(self) -> bool:
        return self._b == 0

    def is_gaussian_integer(self) -> bool:
        return self._d == 1

    def conjugate(self) -> GaussianRational:
        return GaussianRational._raw(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        """re² + im², zero iff ``self`` is zero."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    # ── arithmetic ──────────────────────────────────────────────────────────

    def __add__(self, other: Scalar) -> GaussianRational:
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        if o._d == self._d:
            return GaussianRational._raw(self._a + o._a, self._b + o._b, self._d)
        return GaussianRational._raw(
            self._a * o._d + o._a * self._d,
            self._b * o._d + o._b * self._d,
            self._d * o._d,
        )

    __radd__ = __add__

    def __neg__(self) -> GaussianRational:
        return GaussianRational._raw(-self._a, -self._b, self._d)

    def __sub__(self, other: Scalar) -> GaussianRational:
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Scalar) -> GaussianRational:
        return GaussianRational.coerce(other) - self

    def __mul__(self, other: Scalar) -> GaussianRational:
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational._raw(
            self._a * o._a - self._b * o._b,
            self._a * o._b + self._b * o._a,
            self._d * o._d,
        )

    __rmul__ = __mul__

    def inverse(self) -> GaussianRational:
        if self.is_zero():
            raise DivisionByZero("division by zero in Q(i)")
        n = self._a * self._a + self._b * self._b
        return GaussianRational._raw(self._d * self._a, -self._d * self._b, n)

    def __truediv__(self, other: Scalar) -> GaussianRational:
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Scalar) -> GaussianRational:
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> GaussianRational:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # ── comparison / hashing ────────────────────────────────────────────────

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussianRational):
            return self._a == other._a and self._b == other._b and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self == GaussianRational.coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.re, self.im)

    # ── square roots ────────────────────────────────────────────────────────

    def sqrt(self) -> GaussianRational | None:
        """A square root in Q(i), or ``None`` if ``self`` is not a square there."""
        if self.is_zero():
            return ZERO
        a, b = self.re, self.im
        r = _rational_sqrt(a * a + b * b)
        if r is None:
            return None
        x = _rational_sqrt((a + r) / 2)
        if x is None:
            return None
        if x == 0:
            y = _rational_sqrt((r - a) / 2)
            if y is None:
                return None
            return GaussianRational(0, y)
        return GaussianRational(x, b / (2 * x))

    # ── text ────────────────────────────────────────────────────────────────

    def __repr__(self) -> str:
        return f"GaussianRational({self})"

    def __str__(self) -> str:
        re, im = self.re, self.im
        if im == 0:
            return str(re)
        im_txt = _imag_text(im)
        if re == 0:
            return im_txt
        sign = "-" if im < 0 else "+"
        return f"{re}{sign}{im_txt.lstrip('-')}"


def _imag_text(im: Fraction) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im}*i"


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn != n or rd * rd != d:
        return None
    return Fraction(rn, rd)


ZERO = GaussianRational._raw(0, 0, 1)
ONE = GaussianRational._raw(1, 0, 1)
I = GaussianRational._raw(0, 1, 1)


def gr(value: Scalar | str) -> GaussianRational:
    """Convenience constructor: ints, Fractions, or text like ``"3-2*i"``."""
    if isinstance(value, str):
        from surfcover.algebra.parser import parse_scalar

        return parse_scalar(value)
    return GaussianRational.coerce(value)


def gr_arithmetic(a: Scalar, b: Scalar, op: str) -> GaussianRational:
    """Apply ``op`` ∈ {add, sub, mul, div} exactly."""
    a, b = GaussianRational.coerce(a), GaussianRational.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# ═══════════════════════════════════════════════════════════════════════════
# Exact dense matrices
# ═══════════════════════════════════════════════════════════════════════════

Vector = tuple[GaussianRational, ...]


class ExactMatrix:
    """Dense matrix with Gaussian-rational entries.  Treated as immutable."""

    __slots__ = ("rows", "cols", "_entries", "_rref")

    def __init__(self, entries: Sequence[Sequence[Scalar]], cols: int | None = None) -> None:
        self._entries: tuple[Vector, ...] = tuple(
            tuple(GaussianRational.coerce(x) for x in row) for row in entries
        )
        self.rows = len(self._entries)
        if cols is None:
            if not self._entries:
                raise ValueError("an empty matrix needs an explicit column count")
            cols = len(self._entries[0])
        self.cols = cols
        for row in self._entries:
            if len(row) != cols:
                raise ValueError("ragged matrix rows")
        self._rref: tuple[list[list[GaussianRational]], list[int]] | None = None

    @classmethod
    def zeros(cls, rows: int, cols: int) -> ExactMatrix:
        return cls([[ZERO] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], cols=n)

    def __getitem__(self, index: tuple[int, int]) -> GaussianRational:
        i, j = index
        return self._entries[i][j]

    def row(self, i: int) -> Vector:
        return self._entries[i]

    def to_lists(self) -> list[list[GaussianRational]]:
        return [list(r) for r in self._entries]

    def stack(self, other: ExactMatrix) -> ExactMatrix:
        if other.cols != self.cols:
            raise ValueError("column counts differ")
        return ExactMatrix(list(self._entries) + list(other._entries), cols=self.cols)

    def apply(self, v: Sequence[Scalar]) -> Vector:
        """Matrix–vector product ``M·v``."""
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        vec = [GaussianRational.coerce(x) for x in v]
        out = []
        for row in self._entries:
            acc = ZERO
            for a, b in zip(row, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    # ── elimination ─────────────────────────────────────────────────────────

    def rref(self) -> tuple[list[list[GaussianRational]], list[int]]:
        """Reduced row echelon form and pivot columns (cached)."""
        if self._rref is None:
            self._rref = _gauss_jordan([list(r) for r in self._entries], self.cols)
            logger.debug("rref %dx%d: rank %d", self.rows, self.cols, len(self._rref[1]))
        return self._rref

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> list[Vector]:
        """Exact basis of ``{v : M·v = 0}``, one vector per free column."""
        reduced, pivots = self.rref()
        pivot_set = set(pivots)
        basis: list[Vector] = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            v = [ZERO] * self.cols
            v[free] = ONE
            for r, p in enumerate(pivots):
                entry = reduced[r][free]
                if entry:
                    v[p] = -entry
            basis.append(tuple(v))
        return basis

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols})"


def _gauss_jordan(m: list[list[GaussianRational]], cols: int) -> tuple[list[list[GaussianRational]], list[int]]:
    pivots: list[int] = []
    piv_r = 0
    n_rows = len(m)
    for piv_c in range(cols):
        if piv_r >= n_rows:
            break
        for i_row in range(piv_r, n_rows):
            if m[i_row][piv_c]:
                break
        else:
            continue
        if i_row != piv_r:
            m[piv_r], m[i_row] = m[i_row], m[piv_r]
        inv = m[piv_r][piv_c].inverse()
        prow = [x * inv if x else ZERO for x in m[piv_r]]
        m[piv_r] = prow
        support = [c for c in range(piv_c, cols) if prow[c]]
        for r in range(n_rows):
            if r == piv_r:
                continue
            fr = m[r][piv_c]
            if not fr:
                continue
            row = m[r]
            for c in support:
                row[c] = row[c] - prow[c] * fr
        pivots.append(piv_c)
        piv_r += 1
    return m[:piv_r], pivots


def rank(matrix: ExactMatrix) -> int:
    return matrix.rank()


def kernel(matrix: ExactMatrix) -> list[Vector]:
    return matrix.kernel()


def dot(u: Iterable[Scalar], v: Iterable[Scalar]) -> GaussianRational:
    acc = ZERO
    for a, b in zip(u, v):
        acc = acc + GaussianRational.coerce(a) * GaussianRational.coerce(b)
    return acc
