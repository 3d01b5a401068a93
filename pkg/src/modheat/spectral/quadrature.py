"""Composite Gauss–Legendre quadrature with panel doubling."""

from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np
from pydantic import BaseModel

from ..core.context import ComputeContext, default_context
from ..core.errors import ArgumentError, NumericError

# f(x) for a 1-D array of nodes; a trailing axis carries several integrands at once
Integrand = Callable[[np.ndarray], np.ndarray]

NODES_PER_PANEL = 16
INITIAL_PANELS = 4
# Differences below this multiple of eps·∫|f| are roundoff, not discretization error
ROUNDOFF_FACTOR = 64.0


class QuadratureResult(BaseModel):
    """Integral estimate with the difference between the last two refinements."""

    model_config = {"frozen": True, "arbitrary_types_allowed": True}

    value: np.ndarray
    error: float
    panels: int
    evaluations: int

    @property
    def scalar(self) -> float:
        return float(self.value)


@lru_cache(maxsize=8)
def _reference_rule(order: int) -> Tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(order)


def composite_nodes(a: float, b: float, panels: int, order: int = NODES_PER_PANEL) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the composite rule with equal panels."""
    ref_x, ref_w = _reference_rule(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    x = (mid[:, None] + half[:, None] * ref_x[None, :]).ravel()
    w = (half[:, None] * ref_w[None, :]).ravel()
    return x, w


def _apply(f: Integrand, a: float, b: float, panels: int, order: int) -> Tuple[np.ndarray, np.ndarray]:
    x, w = composite_nodes(a, b, panels, order)
    fx = np.asarray(f(x), dtype=float)
    if fx.shape[0] != x.shape[0]:
        raise ArgumentError(f"integrand returned {fx.shape[0]} values for {x.shape[0]} nodes")
    weights = w.reshape((-1,) + (1,) * (fx.ndim - 1))
    return np.sum(weights * fx, axis=0), np.sum(weights * np.abs(fx), axis=0)


def integrate(
    f: Integrand,
    a: float,
    b: float,
    tol: float,
    max_panels: Optional[int] = None,
    order: int = NODES_PER_PANEL,
    ctx: Optional[ComputeContext] = None,
) -> QuadratureResult:
    """
    Integrate over [a, b], doubling the panel count until two refinements agree.

    Args:
        f: Vectorized integrand
        a: Lower limit
        b: Upper limit
        tol: Absolute tolerance on the difference of successive refinements
        max_panels: Panel cap (default from the context configuration)
        order: Gauss–Legendre nodes per panel
        ctx: Compute context

    Returns:
        Finest estimate and its error proxy

    Raises:
        ArgumentError: If tol is not positive
        NumericError: If the panel cap is reached first
    """
    ctx = ctx or default_context()
    if not tol > 0:
        raise ArgumentError(f"quadrature tolerance must be positive, got {tol}")
    cap = max_panels or ctx.config.quad_max_panels

    panels = INITIAL_PANELS
    coarse, _ = _apply(f, a, b, panels, order)
    evaluations = panels * order
    error = float("inf")
    while panels < cap:
        panels *= 2
        fine, magnitude = _apply(f, a, b, panels, order)
        evaluations += panels * order
        error = float(np.max(np.abs(fine - coarse)))
        floor = ROUNDOFF_FACTOR * np.finfo(float).eps * float(np.max(magnitude))
        if error <= max(tol, floor):
            ctx.logger.debug(f"Quadrature converged: {panels} panels, error {error:.3e}")
            return QuadratureResult(value=np.asarray(fine), error=error, panels=panels, evaluations=evaluations)
        coarse = fine
    raise NumericError(
        f"quadrature did not reach tolerance {tol} within {cap} panels",
        details={"panels": panels, "last_error": error, "tolerance": tol},
    )
