"""Core types and enums for modheat."""

from enum import Enum
from typing import Hashable, TypeVar

# Opaque vertex identifier for weighted graphs (words, integers, group elements)
VertexId = TypeVar("VertexId", bound=Hashable)


class Letter(str, Enum):
    """Letter of a reduced word in C2 * C3 (serialized over the alphabet a, b, c)."""

    A = "a"
    B = "b"
    B2 = "c"  # b squared

    @property
    def inverse(self) -> "Letter":
        """The inverse letter: a is an involution, b and b² swap."""
        if self is Letter.A:
            return Letter.A
        return Letter.B2 if self is Letter.B else Letter.B

    @property
    def is_rotation(self) -> bool:
        """True for the order-3 letters b and b²."""
        return self is not Letter.A


class PrefactorReading(str, Enum):
    """How the closed-form kernel normalizes the coefficient of a fiber."""

    PRINTED = "printed"  # sqrt(2)^(-ceil(n/2)) for every n
    FIBER = "fiber"  # 1/sqrt(fiber_size(n))


class OutputFormat(str, Enum):
    """Output format for command tables."""

    CSV = "csv"
    JSON = "json"


class SpectralComponent(str, Enum):
    """Connected components of the spectrum of the modular-group Laplacian."""

    LOWER_BAND = "lower_band"
    POINT_THREE_QUARTERS = "point_3/4"
    UPPER_BAND = "upper_band"
    POINT_SEVEN_QUARTERS = "point_7/4"
