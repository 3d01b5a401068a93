"""Exact arithmetic in the quadratic field Q[sqrt(2)]."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from .errors import ArgumentError

Rational = Union[int, Fraction]


class QSqrt2:
    """An element a + b·sqrt(2) with rational a and b."""

    __slots__ = ("_a", "_b")

    def __init__(self, a: Rational = 0, b: Rational = 0) -> None:
        self._a = Fraction(a)
        self._b = Fraction(b)

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @classmethod
    def coerce(cls, x: Union[Rational, "QSqrt2"]) -> "QSqrt2":
        if isinstance(x, QSqrt2):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        raise TypeError(f"cannot use {type(x).__name__} in Q[sqrt2]")

    @classmethod
    def sqrt_of(cls, q: Rational) -> "QSqrt2":
        """
        Exact square root of a nonnegative rational, when it lies in Q[sqrt(2)].

        Args:
            q: Nonnegative rational

        Returns:
            r or r·sqrt(2) with r rational

        Raises:
            ArgumentError: If the root is not an element of the field
        """
        q = Fraction(q)
        if q < 0:
            raise ArgumentError(f"negative radicand {q}")
        # sqrt(num/den) = sqrt(num*den)/den
        s = q.numerator * q.denominator
        root = math.isqrt(s)
        if root * root == s:
            return cls(Fraction(root, q.denominator), 0)
        if s % 2 == 0:
            half = s // 2
            root = math.isqrt(half)
            if root * root == half:
                return cls(0, Fraction(root, q.denominator))
        raise ArgumentError(f"sqrt({q}) is not in Q[sqrt2]")

    @property
    def conjugate(self) -> "QSqrt2":
        return QSqrt2(self._a, -self._b)

    @property
    def norm(self) -> Fraction:
        """Field norm a² − 2b²."""
        return self._a * self._a - 2 * self._b * self._b

    def __repr__(self) -> str:
        return f"QSqrt2({self._a}, {self._b})"

    def __str__(self) -> str:
        if self._b == 0:
            return str(self._a)
        if self._a == 0:
            return f"{self._b}√2"
        sign = "+" if self._b > 0 else "-"
        return f"{self._a}{sign}{abs(self._b)}√2"

    def __float__(self) -> float:
        return float(self._a) + float(self._b) * math.sqrt(2.0)

    def __bool__(self) -> bool:
        return self._a != 0 or self._b != 0

    def __hash__(self) -> int:
        return hash((self._a, self._b))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self._b == 0 and self._a == other
        if isinstance(other, QSqrt2):
            return self._a == other._a and self._b == other._b
        return NotImplemented

    def __add__(self, other: Union[Rational, "QSqrt2"]) -> "QSqrt2":
        try:
            o = QSqrt2.coerce(other)
        except TypeError:
            return NotImplemented
        return QSqrt2(self._a + o._a, self._b + o._b)

    def __radd__(self, other: Rational) -> "QSqrt2":
        return self + other

    def __neg__(self) -> "QSqrt2":
        return QSqrt2(-self._a, -self._b)

    def __sub__(self, other: Union[Rational, "QSqrt2"]) -> "QSqrt2":
        return self + (-QSqrt2.coerce(other))

    def __rsub__(self, other: Rational) -> "QSqrt2":
        return (-self) + other

    def __mul__(self, other: Union[Rational, "QSqrt2"]) -> "QSqrt2":
        try:
            o = QSqrt2.coerce(other)
        except TypeError:
            return NotImplemented
        return QSqrt2(
            self._a * o._a + 2 * self._b * o._b,
            self._a * o._b + self._b * o._a,
        )

    def __rmul__(self, other: Rational) -> "QSqrt2":
        return self * other

    @property
    def inverse(self) -> "QSqrt2":
        n = self.norm
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q[sqrt2]")
        return QSqrt2(self._a / n, -self._b / n)

    def __truediv__(self, other: Union[Rational, "QSqrt2"]) -> "QSqrt2":
        return self * QSqrt2.coerce(other).inverse

    def __rtruediv__(self, other: Rational) -> "QSqrt2":
        return QSqrt2.coerce(other) * self.inverse

    def __pow__(self, k: int) -> "QSqrt2":
        base = self if k >= 0 else self.inverse
        result = QSqrt2(1)
        for _ in range(abs(k)):
            result = result * base
        return result


SQRT2 = QSqrt2(0, 1)
