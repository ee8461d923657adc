"""Sparse multivariate polynomials over Q(i) and points of the projective plane.

A ``MultiPoly`` is an ordered tuple of variable names plus a map from exponent
tuples to nonzero ``GaussianRational`` coefficients.  Curves are homogeneous
polynomials in ``(x, y, z)``; local work happens in affine charts with the
point of interest moved to the origin (variables ``(u, v)``).

Canonical term order is graded lexicographic with the variables in the given
order (``x > y > z``).  ``to_text`` prints in that order by default and in
graded reverse lexicographic order on request, which is the order the curve
fixtures were written in.

Local charts
------------
For a point ``p`` the chart coordinate is the last nonzero coordinate of
``p`` (``z`` when possible).  The two remaining coordinates, divided by the
chart coordinate and translated so that ``p`` is the origin, become the local
coordinates ``(u, v)``.  A tangent direction with slope ``t`` is the line
``v = t·u``; the vertical direction is ``u = 0``.
"""

from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence, Union

from surfcover.algebra.exactfield import ONE, ZERO, GaussianRational, Scalar

Monomial = tuple[int, ...]

PROJECTIVE_VARS: tuple[str, str, str] = ("x", "y", "z")
AFFINE_VARS: tuple[str, str] = ("x", "y")
LOCAL_VARS: tuple[str, str] = ("u", "v")


def _grlex_key(exps: Monomial) -> tuple:
    return (sum(exps), exps)


def _grevlex_key(exps: Monomial) -> tuple:
    return (sum(exps), tuple(-e for e in reversed(exps)))


_ORDERS = {"grlex": _grlex_key, "grevlex": _grevlex_key}


# ═══════════════════════════════════════════════════════════════════════════
# MultiPoly
# ═══════════════════════════════════════════════════════════════════════════

class MultiPoly:
    """Immutable sparse polynomial with Gaussian-rational coefficients."""

    __slots__ = ("variables", "_terms", "_hash")

    def __init__(
        self,
        variables: Sequence[str],
        terms: Mapping[Monomial, Scalar] | None = None,
    ) -> None:
        self.variables: tuple[str, ...] = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"repeated variable names in {self.variables}")
        if "i" in self.variables:
            raise ValueError("'i' is the imaginary unit and cannot name a variable")
        n = len(self.variables)
        clean: dict[Monomial, GaussianRational] = {}
        for exps, coeff in (terms or {}).items():
            if len(exps) != n:
                raise ValueError(f"exponent tuple {exps} does not match {n} variables")
            c = GaussianRational.coerce(coeff)
            if c:
                clean[tuple(exps)] = c
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _from_clean(cls, variables: tuple[str, ...], terms: dict[Monomial, GaussianRational]) -> MultiPoly:
        obj = object.__new__(cls)
        obj.variables = variables
        obj._terms = terms
        obj._hash = None
        return obj

    # ── constructors ────────────────────────────────────────────────────────

    @classmethod
    def zero(cls, variables: Sequence[str]) -> MultiPoly:
        return cls(variables)

    @classmethod
    def constant(cls, value: Scalar, variables: Sequence[str]) -> MultiPoly:
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def one(cls, variables: Sequence[str]) -> MultiPoly:
        return cls.constant(ONE, variables)

    @classmethod
    def var(cls, name: str, variables: Sequence[str]) -> MultiPoly:
        variables = tuple(variables)
        exps = [0] * len(variables)
        exps[variables.index(name)] = 1
        return cls(variables, {tuple(exps): ONE})

    @classmethod
    def monomial(cls, exps: Monomial, variables: Sequence[str], coeff: Scalar = 1) -> MultiPoly:
        return cls(variables, {tuple(exps): coeff})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> tuple[MultiPoly, ...]:
        return tuple(cls.var(v, variables) for v in variables)

    # ── inspection ──────────────────────────────────────────────────────────

    @property
    def terms(self) -> Mapping[Monomial, GaussianRational]:
        return MappingProxyType(self._terms)

    def items(self) -> Iterator[tuple[Monomial, GaussianRational]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self) -> GaussianRational:
        return self._terms.get((0,) * len(self.variables), ZERO)

    def coefficient(self, exps: Monomial) -> GaussianRational:
        return self._terms.get(tuple(exps), ZERO)

    def index(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise ValueError(f"{var!r} is not one of {self.variables}") from None

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of a term (multiplicity at the origin); ``-1`` for zero."""
        return min((sum(e) for e in self._terms), default=-1)

    def degree_in(self, var: str) -> int:
        k = self.index(var)
        return max((e[k] for e in self._terms), default=-1)

    def order_in(self, var: str) -> int:
        k = self.index(var)
        return min((e[k] for e in self._terms), default=-1)

    def involves(self, var: str) -> bool:
        k = self.index(var)
        return any(e[k] for e in self._terms)

    def active_variables(self) -> tuple[str, ...]:
        return tuple(v for v in self.variables if self.involves(v))

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def sorted_terms(self, order: str = "grlex") -> list[tuple[Monomial, GaussianRational]]:
        """Terms in descending order."""
        key = _ORDERS[order]
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Monomial, GaussianRational]:
        if not self._terms:
            raise ValueError("the zero polynomial has no leading term")
        exps = max(self._terms, key=_grlex_key)
        return exps, self._terms[exps]

    def leading_coefficient(self) -> GaussianRational:
        return self.leading_term()[1]

    def coefficient_vector(self, monomials: Sequence[Monomial]) -> tuple[GaussianRational, ...]:
        return tuple(self._terms.get(m, ZERO) for m in monomials)

    # ── arithmetic ──────────────────────────────────────────────────────────

    def _coerce(self, other: object) -> MultiPoly | None:
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return MultiPoly.constant(other, self.variables)
        return None

    def __add__(self, other: object) -> MultiPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self._terms)
        for exps, c in o._terms.items():
            s = terms.get(exps)
            if s is None:
                terms[exps] = c
            else:
                s = s + c
                if s:
                    terms[exps] = s
                else:
                    del terms[exps]
        return MultiPoly._from_clean(self.variables, terms)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly._from_clean(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: object) -> MultiPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> MultiPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: object) -> MultiPoly:
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self._terms or not o._terms:
            return MultiPoly._from_clean(self.variables, {})
        terms: dict[Monomial, GaussianRational] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                s = terms.get(exps)
                terms[exps] = prod if s is None else s + prod
        return MultiPoly._from_clean(self.variables, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> MultiPoly:
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = MultiPoly.one(self.variables)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def scale(self, c: Scalar) -> MultiPoly:
        c = GaussianRational.coerce(c)
        if not c:
            return MultiPoly._from_clean(self.variables, {})
        return MultiPoly._from_clean(self.variables, {e: v * c for e, v in self._terms.items()})

    def __truediv__(self, other: Scalar) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if not other.is_constant():
                return NotImplemented
            other = other.constant_term()
        try:
            c = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.scale(c.inverse())

    def shift(self, exps: Monomial) -> MultiPoly:
        """Multiply by the monomial with exponents ``exps``."""
        return MultiPoly._from_clean(
            self.variables,
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self._terms.items()},
        )

    def divmod_exact(self, divisor: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
        """Multivariate division by one divisor in grlex order: ``(q, r)``.

        When ``divisor`` divides ``self`` the remainder is zero.
        """
        d = self._coerce(divisor)
        if d is None or d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lt_exps, lt_c = d.leading_term()
        lt_inv = lt_c.inverse()
        rest = dict(self._terms)
        quotient: dict[Monomial, GaussianRational] = {}
        remainder: dict[Monomial, GaussianRational] = {}
        while rest:
            exps = max(rest, key=_grlex_key)
            c = rest[exps]
            diff = tuple(a - b for a, b in zip(exps, lt_exps))
            if min(diff) < 0:
                remainder[exps] = c
                del rest[exps]
                continue
            q = c * lt_inv
            quotient[diff] = quotient.get(diff, ZERO) + q
            for e2, c2 in d._terms.items():
                target = tuple(a + b for a, b in zip(e2, diff))
                val = rest.get(target, ZERO) - q * c2
                if val:
                    rest[target] = val
                else:
                    rest.pop(target, None)
        return (
            MultiPoly._from_clean(self.variables, {e: c for e, c in quotient.items() if c}),
            MultiPoly._from_clean(self.variables, remainder),
        )

    def exact_div(self, divisor: MultiPoly) -> MultiPoly:
        """Quotient of an exact division; ``ValueError`` if there is a remainder."""
        q, r = self.divmod_exact(divisor)
        if r:
            raise ValueError("polynomial division is not exact")
        return q

    def divides(self, other: MultiPoly) -> bool:
        return not other.divmod_exact(self)[1]

    def monic(self) -> MultiPoly:
        """Scale so that the grlex leading coefficient is 1 (zero stays zero)."""
        if not self._terms:
            return self
        return self.scale(self.leading_coefficient().inverse())

    def equal_up_to_scalar(self, other: MultiPoly) -> bool:
        return self.monic() == other.monic()

    # ── calculus / substitution ─────────────────────────────────────────────

    def differentiate(self, var: str) -> MultiPoly:
        k = self.index(var)
        terms: dict[Monomial, GaussianRational] = {}
        for exps, c in self._terms.items():
            e = exps[k]
            if e:
                new = list(exps)
                new[k] = e - 1
                terms[tuple(new)] = c * e
        return MultiPoly._from_clean(self.variables, terms)

    def evaluate(self, values: Mapping[str, Scalar] | Sequence[Scalar]) -> GaussianRational:
        if isinstance(values, Mapping):
            point = [GaussianRational.coerce(values[v]) for v in self.variables]
        else:
            if len(values) != len(self.variables):
                raise ValueError("point dimension does not match variable count")
            point = [GaussianRational.coerce(v) for v in values]
        powers: list[dict[int, GaussianRational]] = [{0: ONE} for _ in point]
        acc = ZERO
        for exps, c in self._terms.items():
            term = c
            for k, e in enumerate(exps):
                if e:
                    cache = powers[k]
                    p = cache.get(e)
                    if p is None:
                        p = point[k] ** e
                        cache[e] = p
                    term = term * p
                    if not term:
                        break
            acc = acc + term
        return acc

    def substitute(
        self,
        mapping: Mapping[str, Union[MultiPoly, Scalar]],
        variables: Sequence[str] | None = None,
    ) -> MultiPoly:
        """Compose: replace each variable by a polynomial in ``variables``.

        Variables missing from ``mapping`` are carried over unchanged, which
        requires them to exist in the target variable tuple.
        """
        target = tuple(variables) if variables is not None else self.variables
        images: list[MultiPoly] = []
        for v in self.variables:
            img = mapping.get(v)
            if img is None:
                images.append(MultiPoly.var(v, target))
            elif isinstance(img, MultiPoly):
                if img.variables != target:
                    img = img.with_variables(target)
                images.append(img)
            else:
                images.append(MultiPoly.constant(img, target))
        powers: list[dict[int, MultiPoly]] = [{0: MultiPoly.one(target), 1: img} for img in images]

        def power(k: int, e: int) -> MultiPoly:
            cache = powers[k]
            p = cache.get(e)
            if p is None:
                half = power(k, e // 2)
                p = half * half
                if e % 2:
                    p = p * images[k]
                cache[e] = p
            return p

        acc: dict[Monomial, GaussianRational] = {}
        for exps, c in self._terms.items():
            term = MultiPoly.constant(c, target)
            for k, e in enumerate(exps):
                if e:
                    term = term * power(k, e)
            for e2, c2 in term._terms.items():
                s = acc.get(e2)
                acc[e2] = c2 if s is None else s + c2
        return MultiPoly._from_clean(target, {e: c for e, c in acc.items() if c})

    def specialize(self, var: str, value: Scalar) -> MultiPoly:
        """Set ``var = value``; the variable tuple is kept."""
        k = self.index(var)
        value = GaussianRational.coerce(value)
        terms: dict[Monomial, GaussianRational] = {}
        for exps, c in self._terms.items():
            e = exps[k]
            coeff = c if e == 0 else c * value ** e
            if not coeff:
                continue
            new = exps[:k] + (0,) + exps[k + 1:]
            s = terms.get(new)
            terms[new] = coeff if s is None else s + coeff
        return MultiPoly._from_clean(self.variables, {e: c for e, c in terms.items() if c})

    def translate(self, shifts: Mapping[str, Scalar]) -> MultiPoly:
        """Substitute ``var -> var + shift`` for each given variable."""
        mapping = {
            v: MultiPoly.var(v, self.variables) + GaussianRational.coerce(s)
            for v, s in shifts.items()
            if GaussianRational.coerce(s)
        }
        return self.substitute(mapping) if mapping else self

    def with_variables(self, variables: Sequence[str]) -> MultiPoly:
        """Re-embed into another variable tuple (matching by name)."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        positions = []
        for k, v in enumerate(self.variables):
            if v in variables:
                positions.append(variables.index(v))
            elif self.involves(v):
                raise ValueError(f"{v!r} occurs but is not in {variables}")
            else:
                positions.append(None)
        terms: dict[Monomial, GaussianRational] = {}
        for exps, c in self._terms.items():
            new = [0] * len(variables)
            for k, e in enumerate(exps):
                if e:
                    new[positions[k]] = e
            terms[tuple(new)] = c
        return MultiPoly._from_clean(variables, terms)

    def rename(self, mapping: Mapping[str, str]) -> MultiPoly:
        return MultiPoly._from_clean(
            tuple(mapping.get(v, v) for v in self.variables), dict(self._terms)
        )

    # ── graded pieces ───────────────────────────────────────────────────────

    def homogeneous_part(self, degree: int) -> MultiPoly:
        return MultiPoly._from_clean(
            self.variables, {e: c for e, c in self._terms.items() if sum(e) == degree}
        )

    def lowest_part(self) -> MultiPoly:
        """Lowest-degree homogeneous part (tangent cone at the origin)."""
        return self.homogeneous_part(self.order()) if self._terms else self

    def truncate_below(self, degree: int) -> MultiPoly:
        """Drop all terms of total degree < ``degree``."""
        return MultiPoly._from_clean(
            self.variables, {e: c for e, c in self._terms.items() if sum(e) >= degree}
        )

    def homogenize(self, var: str = "z", degree: int | None = None) -> MultiPoly:
        d = self.degree() if degree is None else degree
        variables = self.variables + (var,)
        terms = {e + (d - sum(e),): c for e, c in self._terms.items()}
        if any(t[-1] < 0 for t in terms):
            raise ValueError("homogenizing degree is below the polynomial degree")
        return MultiPoly._from_clean(variables, terms)

    def dehomogenize(self, var: str = "z") -> MultiPoly:
        """Set ``var = 1`` and drop it from the variable tuple."""
        k = self.index(var)
        variables = self.variables[:k] + self.variables[k + 1:]
        terms: dict[Monomial, GaussianRational] = {}
        for exps, c in self._terms.items():
            new = exps[:k] + exps[k + 1:]
            s = terms.get(new)
            terms[new] = c if s is None else s + c
        return MultiPoly._from_clean(variables, {e: c for e, c in terms.items() if c})

    # ── univariate views ────────────────────────────────────────────────────

    def coefficients_in(self, var: str) -> dict[int, MultiPoly]:
        """Coefficients with respect to ``var`` (each free of ``var``)."""
        k = self.index(var)
        buckets: dict[int, dict[Monomial, GaussianRational]] = {}
        for exps, c in self._terms.items():
            e = exps[k]
            buckets.setdefault(e, {})[exps[:k] + (0,) + exps[k + 1:]] = c
        return {e: MultiPoly._from_clean(self.variables, t) for e, t in buckets.items()}

    @classmethod
    def from_coefficients(cls, var: str, coeffs: Mapping[int, MultiPoly], variables: Sequence[str]) -> MultiPoly:
        variables = tuple(variables)
        k = variables.index(var)
        acc = MultiPoly.zero(variables)
        for e, c in coeffs.items():
            if c:
                shift = [0] * len(variables)
                shift[k] = e
                acc = acc + c.shift(tuple(shift))
        return acc

    def leading_coefficient_in(self, var: str) -> MultiPoly:
        return self.coefficients_in(var).get(self.degree_in(var), MultiPoly.zero(self.variables))

    def to_univariate(self, var: str | None = None) -> list[GaussianRational]:
        """Dense coefficient list (constant term first) of a one-variable polynomial."""
        active = self.active_variables()
        if var is None:
            if len(active) > 1:
                raise ValueError(f"polynomial involves {active}, not one variable")
            var = active[0] if active else self.variables[0]
        elif any(v != var for v in active):
            raise ValueError(f"polynomial involves variables other than {var!r}")
        k = self.index(var)
        coeffs = [ZERO] * (self.degree_in(var) + 1)
        for exps, c in self._terms.items():
            coeffs[exps[k]] = c
        return coeffs

    @classmethod
    def from_univariate(cls, coeffs: Sequence[Scalar], var: str, variables: Sequence[str]) -> MultiPoly:
        variables = tuple(variables)
        k = variables.index(var)
        terms = {}
        for e, c in enumerate(coeffs):
            exps = [0] * len(variables)
            exps[k] = e
            terms[tuple(exps)] = c
        return cls(variables, terms)

    # ── equality / text ─────────────────────────────────────────────────────

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self._terms == other._terms
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self._terms == MultiPoly.constant(other, self.variables)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self._terms.items())))
        return self._hash

    def to_text(self, order: str = "grlex") -> str:
        """Canonical text form, parseable by :func:`surfcover.algebra.parser.parse_poly`."""
        if not self._terms:
            return "0"
        out: list[str] = []
        for exps, c in self.sorted_terms(order):
            mono = _monomial_text(exps, self.variables)
            if c.is_real():
                q = c.re
                sign = "-" if q < 0 else "+"
                mag = abs(q)
                if not mono:
                    body = str(mag)
                elif mag == 1:
                    body = mono
                else:
                    body = f"{mag}*{mono}"
            else:
                sign = "+"
                body = f"({_coeff_text(c)})" + (f"*{mono}" if mono else "")
            if out or sign == "-":
                out.append(sign)
            out.append(body)
        return "".join(out)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_text()!r}, variables={self.variables})"


def _monomial_text(exps: Monomial, variables: Sequence[str]) -> str:
    parts = []
    for v, e in zip(variables, exps):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def _coeff_text(c: GaussianRational) -> str:
    # imaginary part first, as in "(8*i+420)"
    im, re = c.im, c.re
    if im == 1:
        im_txt = "i"
    elif im == -1:
        im_txt = "-i"
    else:
        im_txt = f"{im}*i"
    if re == 0:
        return im_txt
    sign = "-" if re < 0 else "+"
    return f"{im_txt}{sign}{abs(re)}"


def poly_sum(polys: Iterable[MultiPoly], variables: Sequence[str]) -> MultiPoly:
    acc = MultiPoly.zero(variables)
    for p in polys:
        acc = acc + p
    return acc


def poly_product(polys: Iterable[MultiPoly], variables: Sequence[str]) -> MultiPoly:
    acc = MultiPoly.one(variables)
    for p in polys:
        acc = acc * p
    return acc


def monomials_of_degree(degree: int, nvars: int = 3) -> list[Monomial]:
    """All exponent tuples of total degree ``degree``, descending grlex."""
    if nvars == 1:
        return [(degree,)]
    out: list[Monomial] = []
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(degree - first, nvars - 1):
            out.append((first,) + rest)
    return out


def differentiate(F: MultiPoly, var: str) -> MultiPoly:
    return F.differentiate(var)


# ═══════════════════════════════════════════════════════════════════════════
# Points of the projective plane
# ═══════════════════════════════════════════════════════════════════════════

class PlanePoint:
    """Point ``(x:y:z)`` of P² over Q(i); equality is up to scaling."""

    __slots__ = ("coords", "_normal")

    def __init__(self, x: Scalar, y: Scalar, z: Scalar = 1) -> None:
        coords = tuple(GaussianRational.coerce(c) for c in (x, y, z))
        if not any(coords):
            raise ValueError("(0:0:0) is not a point of the plane")
        self.coords: tuple[GaussianRational, GaussianRational, GaussianRational] = coords
        k = self.chart()
        inv = coords[k].inverse()
        self._normal = tuple(c * inv for c in coords)

    @classmethod
    def from_text(cls, text: str) -> PlanePoint:
        """``"3,2*i,1"`` (two coordinates mean an affine point with z = 1)."""
        from surfcover.algebra.parser import parse_scalar

        parts = [p for p in text.replace(":", ",").strip().strip("()").split(",")]
        if len(parts) not in (2, 3):
            raise ValueError(f"expected 2 or 3 coordinates in {text!r}")
        return cls(*(parse_scalar(p) for p in parts))

    def chart(self) -> int:
        """Index of the coordinate used as 1 in the local chart (z, then y, then x)."""
        for k in (2, 1, 0):
            if self.coords[k]:
                return k
        raise AssertionError("unreachable")

    @property
    def normalized(self) -> tuple[GaussianRational, GaussianRational, GaussianRational]:
        return self._normal

    def is_affine(self) -> bool:
        return bool(self.coords[2])

    def affine(self) -> tuple[GaussianRational, GaussianRational]:
        if not self.coords[2]:
            raise ValueError(f"{self} is on the line at infinity")
        return self._normal[0], self._normal[1]

    def conjugate(self) -> PlanePoint:
        return PlanePoint(*(c.conjugate() for c in self.coords))

    def lies_on(self, F: MultiPoly) -> bool:
        if len(F.variables) == 2:
            if not self.is_affine():
                return False
            return not F.evaluate(self.affine())
        return not F.evaluate(self._normal)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlanePoint):
            return NotImplemented
        return self._normal == other._normal

    def __hash__(self) -> int:
        return hash(self._normal)

    def sort_key(self) -> tuple:
        return tuple(c.sort_key() for c in self._normal)

    def __str__(self) -> str:
        return "(" + ":".join(str(c) for c in self._normal) + ")"

    def __repr__(self) -> str:
        return f"PlanePoint{self}"


ORIGIN = PlanePoint(0, 0, 1)


# ── local charts ────────────────────────────────────────────────────────────

def chart_variables(p: PlanePoint) -> tuple[int, int, int]:
    """``(k, i, j)``: chart coordinate ``k`` and local coordinates ``u ~ i``, ``v ~ j``."""
    k = p.chart()
    i, j = [c for c in range(3) if c != k]
    return k, i, j


def localize(F: MultiPoly, p: PlanePoint) -> MultiPoly:
    """Affine equation of ``F`` in local coordinates ``(u, v)`` centred at ``p``.

    Projective input must be homogeneous in three variables; two-variable input
    is read as the ``z = 1`` chart.
    """
    if len(F.variables) == 2:
        if not p.is_affine():
            raise ValueError(f"affine polynomial cannot be localized at {p}")
        a, b = p.affine()
        u, v = MultiPoly.gens(LOCAL_VARS)
        return F.substitute({F.variables[0]: u + a, F.variables[1]: v + b}, LOCAL_VARS)
    if len(F.variables) != 3:
        raise ValueError("expected a polynomial in two or three variables")
    if not F.is_homogeneous():
        raise ValueError("projective localization needs a homogeneous polynomial")
    k, i, j = chart_variables(p)
    q = p.normalized
    u, v = MultiPoly.gens(LOCAL_VARS)
    mapping = {
        F.variables[k]: MultiPoly.one(LOCAL_VARS),
        F.variables[i]: u + q[i],
        F.variables[j]: v + q[j],
    }
    return F.substitute(mapping, LOCAL_VARS)


def globalize_line(a: Scalar, b: Scalar, p: PlanePoint, variables: Sequence[str] = PROJECTIVE_VARS) -> MultiPoly:
    """Projective line ``a·u + b·v = 0`` through ``p`` written in ``variables``."""
    k, i, j = chart_variables(p)
    q = p.normalized
    X = MultiPoly.gens(variables)
    u = X[i] - X[k] * q[i]
    v = X[j] - X[k] * q[j]
    return (u * GaussianRational.coerce(a) + v * GaussianRational.coerce(b)).monic()


def line_through(p: PlanePoint, q: PlanePoint, variables: Sequence[str] = PROJECTIVE_VARS) -> MultiPoly:
    """The line through two distinct points (cross product of coordinates)."""
    a, b = p.coords, q.coords
    coeffs = (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )
    if not any(coeffs):
        raise ValueError(f"{p} and {q} coincide")
    X = MultiPoly.gens(variables)
    return (X[0] * coeffs[0] + X[1] * coeffs[1] + X[2] * coeffs[2]).monic()
