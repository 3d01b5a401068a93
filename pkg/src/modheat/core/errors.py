"""Exception hierarchy for modheat."""

from typing import Any, Dict, Optional


class ModheatError(Exception):
    """Base exception for all modheat failures."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


class ArgumentError(ModheatError, ValueError):
    """Exception raised for invalid inputs (bad prime, unknown vertex, out-of-range x)."""

    pass


class ResourceError(ModheatError):
    """Exception raised when an enumeration would exceed the vertex budget."""

    pass


class InvariantViolationError(ModheatError):
    """Exception raised when a data invariant does not hold."""

    pass


class BoundaryError(ModheatError):
    """Exception raised when a stencil leaves its window."""

    pass


class PreconditionError(ModheatError):
    """Exception raised when a check would read values contaminated by truncation."""

    pass


class NumericError(ModheatError):
    """Exception raised when quadrature or an eigensolver fails to converge."""

    pass
