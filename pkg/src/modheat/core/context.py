"""Runtime context for computations: configuration and logging."""

import logging
from typing import Optional

from .config import RunConfig
from .errors import ResourceError


class ComputeContext:
    """Context for computations with shared configuration and logger."""

    def __init__(
        self,
        config: Optional[RunConfig] = None,
        logger: Optional[logging.Logger] = None,
    ):
        """
        Initialize compute context.

        Args:
            config: Run configuration (defaults apply when omitted)
            logger: Logger instance for progress and diagnostics
        """
        self.config = config or RunConfig()
        self.logger = logger or logging.getLogger("modheat")

    @property
    def vertex_budget(self) -> int:
        """Largest vertex count any enumeration may produce."""
        return self.config.vertex_budget

    def check_budget(self, what: str, size: int) -> None:
        """
        Refuse enumerations larger than the vertex budget.

        Args:
            what: Human-readable name of the enumeration
            size: Number of vertices it would produce

        Raises:
            ResourceError: If size exceeds the budget
        """
        if size > self.vertex_budget:
            raise ResourceError(
                f"{what} has {size} vertices, over the budget of {self.vertex_budget}",
                details={"what": what, "size": size, "budget": self.vertex_budget},
            )
        self.logger.debug(f"{what}: {size} vertices")

    def with_config(self, **overrides) -> "ComputeContext":
        """Return a context sharing the logger with some config fields replaced."""
        return ComputeContext(self.config.model_copy(update=overrides), self.logger)


# Global default context
_DEFAULT_CTX: Optional[ComputeContext] = None


def default_context() -> ComputeContext:
    """
    Get the default compute context.

    Returns:
        Default ComputeContext instance
    """
    global _DEFAULT_CTX
    if _DEFAULT_CTX is None:
        _DEFAULT_CTX = ComputeContext()
    return _DEFAULT_CTX


def set_default_context(ctx: ComputeContext) -> None:
    """
    Set the default compute context.

    Args:
        ctx: ComputeContext to use as default
    """
    global _DEFAULT_CTX
    _DEFAULT_CTX = ctx
