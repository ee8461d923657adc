"""Resultants, gcds, squarefree tests and exact roots over Q(i).

Resultants of two polynomials in two variables are computed by evaluation:
the resultant at ``deg F · deg G + 1`` integer values of the other variable,
each a one-variable resultant over Q(i), then interpolation.  With more
variables they use the subresultant polynomial remainder sequence (Brown's
algorithm, as in sympy's ``dup_inner_subresultants``), run with coefficients
that are themselves polynomials in the remaining variables.  Every division
inside the sequence is exact, so no fractions of polynomials appear.

Multivariate gcds recurse on the variables: content in the other variables,
then the subresultant PRS of the primitive parts.  One-variable gcds use the
Euclidean algorithm over Q(i) on dense coefficient lists.

Roots in Q(i) of a one-variable polynomial are found p-adically: roots modulo
a prime ``p ≡ 1 (mod 4)`` under both maps ``Z[i] → Z/p`` are lifted by Newton
iteration, paired, and read back inside the bound a root's denominator must
satisfy.  Every root is found, and each one is verified exactly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import isqrt, lcm
from typing import Iterator, Sequence

from surfcover.algebra.exactfield import ONE, ZERO, GaussianRational
from surfcover.algebra.poly import MultiPoly
from surfcover.errors import NotSquarefree

logger = logging.getLogger(__name__)

UPoly = list[GaussianRational]  # constant term first

# smallest prime tried for p-adic root extraction
FIRST_PRIME = 1009


# ═══════════════════════════════════════════════════════════════════════════
# Dense univariate helpers over Q(i)
# ═══════════════════════════════════════════════════════════════════════════

def _trim(f: UPoly) -> UPoly:
    while f and not f[-1]:
        f.pop()
    return f


def u_degree(f: UPoly) -> int:
    return len(f) - 1


def u_monic(f: UPoly) -> UPoly:
    if not f:
        return f
    inv = f[-1].inverse()
    return [c * inv for c in f]


def u_divmod(f: UPoly, g: UPoly) -> tuple[UPoly, UPoly]:
    g = _trim(list(g))
    if not g:
        raise ZeroDivisionError("univariate division by zero")
    r = _trim(list(f))
    if len(r) < len(g):
        return [], r
    inv = g[-1].inverse()
    q = [ZERO] * (len(r) - len(g) + 1)
    dg = len(g) - 1
    while len(r) >= len(g):
        shift = len(r) - len(g)
        c = r[-1] * inv
        q[shift] = c
        for k in range(dg + 1):
            if g[k]:
                r[shift + k] = r[shift + k] - c * g[k]
        r.pop()
        _trim(r)
    return _trim(q), r


def u_gcd(f: UPoly, g: UPoly) -> UPoly:
    """Monic gcd (``[]`` only if both inputs are zero)."""
    a, b = _trim(list(f)), _trim(list(g))
    while b:
        a, b = b, u_divmod(a, b)[1]
    return u_monic(a)


def u_derivative(f: UPoly) -> UPoly:
    return _trim([f[k] * k for k in range(1, len(f))])


def u_eval(f: UPoly, x: GaussianRational) -> GaussianRational:
    acc = ZERO
    for c in reversed(f):
        acc = acc * x + c
    return acc


def u_mul(f: UPoly, g: UPoly) -> UPoly:
    if not f or not g:
        return []
    out = [ZERO] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = out[i + j] + a * b
    return _trim(out)


def squarefree_decomposition(f: UPoly) -> list[tuple[UPoly, int]]:
    """Yun's algorithm: ``[(a_k, k)]`` with ``f = c·∏ a_k^k``, each ``a_k`` squarefree, monic."""
    f = _trim(list(f))
    if len(f) <= 1:
        return []
    out: list[tuple[UPoly, int]] = []
    df = u_derivative(f)
    a = u_gcd(f, df)
    b = u_divmod(f, a)[0]
    c = u_divmod(df, a)[0]
    d = _sub(c, u_derivative(b))
    k = 1
    while len(b) > 1:
        a = u_gcd(b, d)
        if len(a) > 1:
            out.append((a, k))
        b = u_divmod(b, a)[0]
        c = u_divmod(d, a)[0]
        d = _sub(c, u_derivative(b))
        k += 1
    return out


def _sub(f: UPoly, g: UPoly) -> UPoly:
    n = max(len(f), len(g))
    out = [(f[k] if k < len(f) else ZERO) - (g[k] if k < len(g) else ZERO) for k in range(n)]
    return _trim(out)


def _add(f: UPoly, g: UPoly) -> UPoly:
    n = max(len(f), len(g))
    out = [(f[k] if k < len(f) else ZERO) + (g[k] if k < len(g) else ZERO) for k in range(n)]
    return _trim(out)


def u_resultant(f: UPoly, g: UPoly) -> GaussianRational:
    """Sylvester resultant of two one-variable polynomials, by the Euclidean algorithm."""
    f, g = _trim(list(f)), _trim(list(g))
    if not f or not g:
        return ZERO
    if len(f) == 1:
        return f[0] ** (len(g) - 1)
    acc = ONE
    while True:
        df, dg = len(f) - 1, len(g) - 1
        if dg == 0:
            return acc * g[0] ** df
        r = u_divmod(f, g)[1]
        if not r:
            return ZERO
        # Res(f, g) = (−1)^(df·dg) · lc(g)^(df − deg r) · Res(g, r)
        if (df * dg) % 2:
            acc = -acc
        acc = acc * g[-1] ** (df - (len(r) - 1))
        f, g = g, r


def u_interpolate(xs: Sequence[GaussianRational], ys: Sequence[GaussianRational]) -> UPoly:
    """The polynomial of degree < len(xs) through the points, via Newton's divided differences."""
    coef = list(ys)
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out: UPoly = _trim([coef[-1]])
    for i in range(n - 2, -1, -1):
        out = _add(u_mul(out, [-xs[i], ONE]), [coef[i]])
    return out


def squarefree_part(f: UPoly) -> UPoly:
    f = _trim(list(f))
    if len(f) <= 1:
        return u_monic(f)
    return u_monic(u_divmod(f, u_gcd(f, u_derivative(f)))[0])


# ═══════════════════════════════════════════════════════════════════════════
# Exact roots in Q(i)
# ═══════════════════════════════════════════════════════════════════════════

@dataclass
class RootSet:
    """Roots in Q(i) with multiplicities, plus the factor with no root in Q(i)."""

    roots: list[tuple[GaussianRational, int]] = field(default_factory=list)
    residual: UPoly = field(default_factory=list)
    """Monic product of the factors with no root in Q(i) (``[1]`` if none)."""

    @property
    def complete(self) -> bool:
        return len(self.residual) <= 1

    def values(self) -> list[GaussianRational]:
        return [r for r, _ in self.roots]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def split_primes(start: int = FIRST_PRIME) -> Iterator[int]:
    """Primes ``p ≡ 1 (mod 4)``: −1 is a square mod p, so Z[i] maps onto Z/p in two ways."""
    p = start
    while True:
        if p % 4 == 1 and _is_prime(p):
            yield p
        p += 1


def sqrt_minus_one(p: int) -> int:
    for g in range(2, p):
        if pow(g, (p - 1) // 2, p) == p - 1:
            return pow(g, (p - 1) // 4, p)
    raise ValueError(f"−1 is not a square modulo {p}")


def _eval_mod(f: Sequence[int], x: int, m: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % m
    return acc


def _derivative_mod(f: Sequence[int], m: int) -> list[int]:
    return [(k * f[k]) % m for k in range(1, len(f))]


def hensel_lift(f: Sequence[int], root: int, p: int, k: int) -> int:
    """Lift a simple root of ``f`` mod ``p`` to the unique root mod ``p^k`` above it."""
    x, e = root % p, 1
    while e < k:
        e = min(2 * e, k)
        m = p ** e
        x = (x - _eval_mod(f, x, m) * pow(_eval_mod(_derivative_mod(f, m), x, m), -1, m)) % m
    return x


def _symmetric(c: int, m: int) -> int:
    return c - m if c > m // 2 else c


def _gaussian_integer_parts(f: UPoly) -> list[tuple[int, int]]:
    d = lcm(*(c.denominator for c in f))
    return [(int(c.re * d), int(c.im * d)) for c in f]


def _image(parts: Sequence[tuple[int, int]], iota: int, m: int) -> list[int]:
    """``a + b·i ↦ a + b·ι mod m``; ``ι`` and ``−ι`` give the two maps Z[i] → Z/m."""
    return [(a + b * iota) % m for a, b in parts]


def _simple_roots_mod(f: Sequence[int], p: int) -> list[int] | None:
    """All roots of ``f`` mod ``p``, or None if one of them is multiple."""
    df = _derivative_mod(f, p)
    roots = [x for x in range(p) if not _eval_mod(f, x, p)]
    if any(not _eval_mod(df, x, p) for x in roots):
        return None
    return roots


def _padic_roots(f: UPoly) -> list[GaussianRational]:
    """Every root in Q(i) of a squarefree ``f`` of degree ≥ 1.

    A root ``u/v`` in lowest terms has ``v | lc``, so ``y = lc·root`` is a
    Gaussian integer with ``|y| ≤ |lc| + max|a_k|``.  Under the two maps
    ``Z[i] → Z/p^k`` it becomes ``s + tι`` and ``s − tι``, each ``lc`` times a
    lifted root of an image polynomial.  With ``p^k`` above twice the bound,
    ``s`` and ``t`` come back as symmetric residues; candidates are verified.
    """
    parts = _gaussian_integer_parts(f)
    la, lb = parts[-1]
    bound = 2 * (max(isqrt(a * a + b * b) for a, b in parts) + 1)
    norm_lc = la * la + lb * lb
    for p in split_primes():
        if norm_lc % p == 0:
            continue
        iota = sqrt_minus_one(p)
        residues = [_simple_roots_mod(_image(parts, s * iota, p), p) for s in (1, -1)]
        if any(r is None for r in residues):
            logger.debug("prime %d divides the discriminant, trying the next one", p)
            continue
        k = 1
        while p ** k <= 2 * bound:
            k += 1
        m = p ** k
        iota_m = hensel_lift([1, 0, 1], iota, p, k)
        lifted = []
        for s, roots in zip((1, -1), residues):
            fm = _image(parts, s * iota_m, m)
            lifted.append([fm[-1] * hensel_lift(fm, x, p, k) % m for x in roots])
        half, half_iota = pow(2, -1, m), pow(2 * iota_m, -1, m)
        lc = GaussianRational(la, lb)
        found: list[GaussianRational] = []
        for c1 in lifted[0]:
            for c2 in lifted[1]:
                re = _symmetric((c1 + c2) * half % m, m)
                im = _symmetric((c1 - c2) * half_iota % m, m)
                if abs(re) > bound or abs(im) > bound:
                    continue
                r = GaussianRational(re, im) / lc
                if r not in found and not u_eval(f, r):
                    found.append(r)
        logger.debug("degree %d: %d root(s) in Q(i) via p = %d, k = %d", len(f) - 1, len(found), p, k)
        return found
    raise AssertionError("unreachable")  # pragma: no cover


def _solve_low_degree(f: UPoly) -> list[GaussianRational] | None:
    """Exact roots of a monic linear or quadratic factor, or ``None`` if not in Q(i)."""
    if len(f) == 2:
        return [-f[0] / f[1]]
    if len(f) == 3:
        a, b, c = f[2], f[1], f[0]
        disc = b * b - a * c * 4
        s = disc.sqrt()
        if s is None:
            return None
        return [(-b + s) / (a * 2), (-b - s) / (a * 2)]
    return None


def squarefree_roots(f: UPoly) -> tuple[list[GaussianRational], UPoly]:
    """Roots in Q(i) of a squarefree polynomial and the monic factor without any."""
    rest = u_monic(_trim(list(f)))
    if len(rest) <= 1:
        return [], [ONE]
    if len(rest) <= 3:
        low = _solve_low_degree(rest)
        return (low, [ONE]) if low is not None else ([], rest)
    found = _padic_roots(rest)
    for r in found:
        rest = u_divmod(rest, [-r, ONE])[0]
    if len(rest) <= 1:
        rest = [ONE]
    return found, rest


def gaussian_rational_roots(f: UPoly | MultiPoly) -> RootSet:
    """All roots of ``f`` in Q(i) with multiplicities."""
    if isinstance(f, MultiPoly):
        f = f.to_univariate()
    f = _trim(list(f))
    if not f:
        raise ValueError("the zero polynomial has every value as a root")
    result = RootSet(residual=[ONE])
    for factor, mult in squarefree_decomposition(f):
        roots, rest = squarefree_roots(factor)
        result.roots.extend((r, mult) for r in roots)
        if len(rest) > 1:
            residual = result.residual
            for _ in range(mult):
                residual = u_mul(residual, rest)
            result.residual = residual
    result.roots.sort(key=lambda rm: rm[0].sort_key())
    return result


# ═══════════════════════════════════════════════════════════════════════════
# Subresultant PRS with polynomial coefficients
# ═══════════════════════════════════════════════════════════════════════════

def _lc(F: MultiPoly, var: str) -> MultiPoly:
    return F.leading_coefficient_in(var)


def prem(F: MultiPoly, G: MultiPoly, var: str) -> MultiPoly:
    """Pseudo-remainder ``lc(G)^(deg F − deg G + 1)·F mod G`` in ``var``."""
    df, dg = F.degree_in(var), G.degree_in(var)
    if dg < 0:
        raise ZeroDivisionError("pseudo-remainder by zero")
    if df < dg:
        return F
    k = F.index(var)
    lg = _lc(G, var)
    r = F
    n = df - dg + 1
    while r and r.degree_in(var) >= dg:
        dr = r.degree_in(var)
        lr = _lc(r, var)
        shift = [0] * len(F.variables)
        shift[k] = dr - dg
        r = r * lg - (G * lr).shift(tuple(shift))
        n -= 1
    return r * (lg ** n) if n > 0 else r


def subresultant_prs(F: MultiPoly, G: MultiPoly, var: str) -> tuple[list[MultiPoly], list[MultiPoly]]:
    """Subresultant PRS ``R`` and scalar subresultants ``S`` (swapped if deg F < deg G)."""
    n, m = F.degree_in(var), G.degree_in(var)
    if n < m:
        F, G = G, F
        n, m = m, n
    if not F:
        return [], []
    one = MultiPoly.one(F.variables)
    if not G:
        return [F], [one]
    R = [F, G]
    d = n - m
    b = one if (d + 1) % 2 == 0 else -one
    h = prem(F, G, var) * b
    lc = _lc(G, var)
    c = lc ** d
    S = [one, c]
    c = -c
    while h:
        k = h.degree_in(var)
        R.append(h)
        F, G, m, d = G, h, k, m - k
        b = -lc * c ** d
        h = prem(F, G, var).exact_div(b)
        lc = _lc(G, var)
        if d > 1:
            q = c ** (d - 1)
            c = ((-lc) ** d).exact_div(q)
        else:
            c = -lc
        S.append(-c)
    return R, S


def _resultant_by_evaluation(F: MultiPoly, G: MultiPoly, var: str, other: str) -> MultiPoly:
    """``Res_var`` of two polynomials in ``(var, other)`` by evaluation and interpolation.

    ``deg_other Res ≤ deg F · deg G``.  Nodes where a leading coefficient in
    ``var`` vanishes are skipped; at every other node specialisation commutes
    with the resultant.
    """
    n, m = F.degree_in(var), G.degree_in(var)
    lF, lG = _lc(F, var), _lc(G, var)
    bound = F.degree() * G.degree()
    xs: list[GaussianRational] = []
    ys: list[GaussianRational] = []
    node = 0
    while len(xs) <= bound:
        x0 = GaussianRational(node)
        node += 1
        if not lF.specialize(other, x0).constant_term() or not lG.specialize(other, x0).constant_term():
            continue
        f = F.specialize(other, x0).to_univariate(var)
        g = G.specialize(other, x0).to_univariate(var)
        xs.append(x0)
        ys.append(u_resultant(f, g))
    coeffs = u_interpolate(xs, ys)
    logger.debug("resultant in %s by evaluation: degrees (%d, %d), %d nodes", var, n, m, len(xs))
    return MultiPoly.from_univariate(coeffs, other, F.variables)


def resultant(F: MultiPoly, G: MultiPoly, var: str) -> MultiPoly:
    """Resultant of ``F`` and ``G`` with respect to ``var``; a polynomial free of ``var``."""
    if F.variables != G.variables:
        raise ValueError("resultant needs polynomials over the same variables")
    if not F or not G:
        return MultiPoly.zero(F.variables)
    n, m = F.degree_in(var), G.degree_in(var)
    if n == 0 and m == 0:
        return MultiPoly.one(F.variables)
    if m == 0:
        return G ** n
    if n == 0:
        return F ** m
    others = [v for v in F.variables if v != var and (F.involves(v) or G.involves(v))]
    if len(others) == 1:
        return _resultant_by_evaluation(F, G, var, others[0])
    R, S = subresultant_prs(F, G, var)
    if R[-1].degree_in(var) > 0:
        res = MultiPoly.zero(F.variables)
    else:
        res = S[-1]
    if n < m and (n * m) % 2:
        res = -res
    logger.debug("resultant in %s: degrees (%d, %d) -> %d terms", var, n, m, len(res))
    return res


# ═══════════════════════════════════════════════════════════════════════════
# gcd, content, squarefree
# ═══════════════════════════════════════════════════════════════════════════

def content(F: MultiPoly, var: str) -> MultiPoly:
    """gcd of the coefficients of ``F`` viewed as a polynomial in ``var``."""
    acc = MultiPoly.zero(F.variables)
    for c in F.coefficients_in(var).values():
        acc = gcd(acc, c)
        if acc.is_constant() and acc:
            return MultiPoly.one(F.variables)
    return acc


def primitive_part(F: MultiPoly, var: str) -> MultiPoly:
    if not F:
        return F
    return F.exact_div(content(F, var))


def gcd(F: MultiPoly, G: MultiPoly) -> MultiPoly:
    """Greatest common divisor, normalised to leading coefficient 1."""
    if F.variables != G.variables:
        raise ValueError("gcd needs polynomials over the same variables")
    if not F:
        return G.monic()
    if not G:
        return F.monic()
    if F.is_constant() or G.is_constant():
        return MultiPoly.one(F.variables)
    active = [v for v in F.variables if F.involves(v) or G.involves(v)]
    if len(active) == 1:
        v = active[0]
        g = u_gcd(F.to_univariate(v), G.to_univariate(v))
        return MultiPoly.from_univariate(g, v, F.variables)
    var = active[-1]
    if not F.involves(var):
        return gcd(F, content(G, var))
    if not G.involves(var):
        return gcd(content(F, var), G)
    cF, cG = content(F, var), content(G, var)
    pF, pG = F.exact_div(cF), G.exact_div(cG)
    c = gcd(cF, cG)
    R, _ = subresultant_prs(pF, pG, var)
    last = R[-1]
    if last.degree_in(var) <= 0:
        g = MultiPoly.one(F.variables)
    else:
        g = primitive_part(last, var)
    return (c * g).monic()


def gcd_bivariate(F: MultiPoly, G: MultiPoly) -> MultiPoly:
    """gcd of two polynomials in at most two active variables."""
    active = {v for v in F.variables if F.involves(v)} | {v for v in G.variables if G.involves(v)}
    if len(active) > 2:
        raise ValueError(f"expected a bivariate input, got variables {sorted(active)}")
    return gcd(F, G)


def gcd_many(polys: Sequence[MultiPoly]) -> MultiPoly:
    acc = MultiPoly.zero(polys[0].variables)
    for p in polys:
        acc = gcd(acc, p)
    return acc


def is_squarefree(F: MultiPoly) -> bool:
    """No repeated factor: ``gcd(F, ∂F/∂v for every variable)`` is constant."""
    if not F:
        return False
    g = F
    for v in F.variables:
        if F.involves(v):
            g = gcd(g, F.differentiate(v))
            if g.is_constant():
                return True
    return g.is_constant()


def require_squarefree(F: MultiPoly) -> None:
    if not is_squarefree(F):
        raise NotSquarefree(f"polynomial has a repeated factor: {F}")
