"""Core types, errors, configuration and runtime context."""

from .types import Letter, OutputFormat, PrefactorReading, SpectralComponent
from .errors import (
    ModheatError,
    ArgumentError,
    ResourceError,
    InvariantViolationError,
    BoundaryError,
    PreconditionError,
    NumericError,
)
from .config import RunConfig
from .context import ComputeContext, default_context, set_default_context
from .qsqrt2 import QSqrt2, SQRT2

__all__ = [
    "Letter",
    "OutputFormat",
    "PrefactorReading",
    "SpectralComponent",
    "ModheatError",
    "ArgumentError",
    "ResourceError",
    "InvariantViolationError",
    "BoundaryError",
    "PreconditionError",
    "NumericError",
    "RunConfig",
    "ComputeContext",
    "default_context",
    "set_default_context",
    "QSqrt2",
    "SQRT2",
]
