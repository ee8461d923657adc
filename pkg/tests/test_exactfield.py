"""Tests for exact Q(i) arithmetic and dense matrices.

Covers:
  - GaussianRational arithmetic, normalisation, text form, square roots
  - field axioms (hypothesis)
  - ExactMatrix rank, kernel and construction errors
"""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from surfcover.algebra.exactfield import I, ONE, ZERO, ExactMatrix, GaussianRational, dot, gr, gr_arithmetic
from surfcover.errors import DivisionByZero

fractions = st.fractions(min_value=-1000, max_value=1000, max_denominator=50)
scalars = st.builds(GaussianRational, fractions, fractions)


# ═══════════════════════════════════════════════════════════════════════════
# GaussianRational
# ═══════════════════════════════════════════════════════════════════════════

class TestGaussianRational:
    """Basic arithmetic and normal form."""

    def test_i_squared_is_minus_one(self):
        assert I * I == -1

    def test_normalises_fractions(self):
        a = GaussianRational(Fraction(2, 4), Fraction(6, 8))
        assert a == GaussianRational(Fraction(1, 2), Fraction(3, 4))
        assert a.denominator == 4

    def test_division(self):
        assert gr("1+i") / gr("1-i") == I

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            ONE / ZERO
        with pytest.raises(ZeroDivisionError):
            ZERO.inverse()

    def test_equality_with_int_and_fraction(self):
        assert GaussianRational(3) == 3
        assert GaussianRational(Fraction(1, 2)) == Fraction(1, 2)
        assert GaussianRational(3, 1) != 3

    def test_hash_matches_fraction_for_real_values(self):
        assert hash(GaussianRational(Fraction(5, 3))) == hash(Fraction(5, 3))
        assert len({GaussianRational(2), gr("2"), GaussianRational(Fraction(4, 2))}) == 1

    def test_conjugate_and_norm(self):
        z = gr("3-4*i")
        assert z.conjugate() == gr("3+4*i")
        assert z.norm() == 25

    def test_power(self):
        assert I ** 4 == 1
        assert gr("1+i") ** 2 == gr("2*i")
        assert gr("2") ** -1 == Fraction(1, 2)

    def test_arithmetic_by_name(self):
        assert gr_arithmetic(1, I, "add") == gr("1+i")
        assert gr_arithmetic(I, I, "mul") == -1
        with pytest.raises(ValueError):
            gr_arithmetic(1, 1, "pow")


class TestText:
    """String form of Gaussian rationals."""

    @pytest.mark.parametrize("value, text", [
        (GaussianRational(3), "3"),
        (GaussianRational(0, 1), "i"),
        (GaussianRational(0, -1), "-i"),
        (GaussianRational(0, 2), "2*i"),
        (GaussianRational(Fraction(1, 2), Fraction(3, 4)), "1/2+3/4*i"),
        (GaussianRational(3, -2), "3-2*i"),
    ])
    def test_str(self, value, text):
        assert str(value) == text

    def test_parse_of_str_is_identity(self):
        z = GaussianRational(Fraction(-7, 3), Fraction(5, 2))
        assert gr(str(z)) == z


class TestSqrt:
    """Square roots inside Q(i)."""

    @pytest.mark.parametrize("text", ["4", "-1", "2*i", "-3-4*i", "9/4", "0"])
    def test_squares(self, text):
        z = gr(text)
        root = z.sqrt()
        assert root is not None
        assert root * root == z

    @pytest.mark.parametrize("text", ["2", "-2", "i", "1+i"])
    def test_non_squares(self, text):
        assert gr(text).sqrt() is None


class TestFieldAxioms:
    """Property checks over random Gaussian rationals."""

    @given(scalars, scalars, scalars)
    def test_distributive(self, a, b, c):
        assert a * (b + c) == a * b + a * c

    @given(scalars, scalars)
    def test_commutative(self, a, b):
        assert a + b == b + a
        assert a * b == b * a

    @given(scalars)
    def test_inverse(self, a):
        if a.is_zero():
            return
        assert a * a.inverse() == ONE
        assert a - a == ZERO

    @given(scalars)
    def test_square_has_root(self, a):
        root = (a * a).sqrt()
        assert root is not None
        assert root in (a, -a)


# ═══════════════════════════════════════════════════════════════════════════
# ExactMatrix
# ═══════════════════════════════════════════════════════════════════════════

class TestExactMatrix:
    """Gauss-Jordan rank and kernel."""

    def test_identity_full_rank(self):
        M = ExactMatrix.identity(4)
        assert M.rank() == 4
        assert M.kernel() == []

    def test_kernel_vectors_are_annihilated(self):
        M = ExactMatrix([[1, I, 2], [I, -1, gr("2*i")]])
        assert M.rank() == 1
        basis = M.kernel()
        assert len(basis) == 2
        for v in basis:
            assert all(x == 0 for x in M.apply(v))

    def test_rank_plus_nullity(self):
        M = ExactMatrix([[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, I, 0]])
        assert M.rank() + len(M.kernel()) == M.cols

    def test_zeros(self):
        M = ExactMatrix.zeros(2, 3)
        assert M.rank() == 0
        assert len(M.kernel()) == 3

    def test_empty_matrix_needs_cols(self):
        M = ExactMatrix([], cols=3)
        assert M.rows == 0
        assert len(M.kernel()) == 3

    def test_ragged_rejected(self):
        with pytest.raises(ValueError):
            ExactMatrix([[1, 2], [3]])

    def test_stack(self):
        M = ExactMatrix([[1, 0]]).stack(ExactMatrix([[0, 1]]))
        assert M.rows == 2
        assert M.rank() == 2
        assert M[1, 1] == 1

    def test_dot(self):
        assert dot([1, I], [1, I]) == 0
