"""Tests for exact arithmetic in Q[sqrt2]."""

import math
from fractions import Fraction

import pytest

from modheat.core import ArgumentError, QSqrt2, SQRT2


class TestArithmetic:
    """Test field operations."""

    def test_product_with_conjugate_is_norm(self):
        """Test (1 + √2)(1 − √2) = −1."""
        x = QSqrt2(1, 1)
        assert x * x.conjugate == -1
        assert x.norm == -1

    def test_inverse(self):
        """Test 1/(1 + √2) = √2 − 1."""
        assert QSqrt2(1, 1).inverse == QSqrt2(-1, 1)
        assert QSqrt2(3, 2) * QSqrt2(3, 2).inverse == 1

    def test_division_by_zero(self):
        """Test that zero has no inverse."""
        with pytest.raises(ZeroDivisionError):
            QSqrt2(1) / QSqrt2(0)

    def test_powers(self):
        """Test positive and negative powers of √2."""
        assert SQRT2**2 == 2
        assert SQRT2**-2 == Fraction(1, 2)
        assert SQRT2**0 == 1
        assert (-SQRT2) ** 3 == QSqrt2(0, -2)

    def test_mixed_with_rationals(self):
        """Test integers and fractions combine on both sides."""
        assert 1 + SQRT2 == QSqrt2(1, 1)
        assert SQRT2 - 1 == QSqrt2(-1, 1)
        assert 2 * SQRT2 / 4 == QSqrt2(0, Fraction(1, 2))
        assert 1 / SQRT2 == QSqrt2(0, Fraction(1, 2))

    def test_float_rejected(self):
        """Test that floats do not silently enter the field."""
        with pytest.raises(TypeError):
            QSqrt2(1) + 1.5

    def test_float_conversion(self):
        """Test conversion to float."""
        assert math.isclose(float(QSqrt2(1, 1)), 1 + math.sqrt(2))


class TestSquareRoots:
    """Test exact square roots."""

    def test_rational_root(self):
        """Test perfect squares."""
        assert QSqrt2.sqrt_of(4) == 2
        assert QSqrt2.sqrt_of(Fraction(9, 4)) == Fraction(3, 2)

    def test_root_with_sqrt2(self):
        """Test radicands that are twice a square."""
        assert QSqrt2.sqrt_of(2) == SQRT2
        assert QSqrt2.sqrt_of(8) == QSqrt2(0, 2)
        assert QSqrt2.sqrt_of(Fraction(1, 2)) == QSqrt2(0, Fraction(1, 2))

    def test_root_outside_field(self):
        """Test that sqrt(3) is refused."""
        with pytest.raises(ArgumentError):
            QSqrt2.sqrt_of(3)

    def test_negative_radicand(self):
        """Test that negative radicands are refused."""
        with pytest.raises(ArgumentError):
            QSqrt2.sqrt_of(-4)


class TestFormatting:
    """Test text forms."""

    def test_str(self):
        """Test rational, pure and mixed elements."""
        assert str(QSqrt2(Fraction(3, 4))) == "3/4"
        assert str(-SQRT2 / 4) == "-1/4√2"
        assert str(QSqrt2(1, -1)) == "1-1√2"

    def test_hashable(self):
        """Test equal elements hash equally."""
        assert len({QSqrt2(1, 2), QSqrt2(Fraction(2, 2), 2)}) == 1
