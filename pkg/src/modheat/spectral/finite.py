"""Cayley graphs of PSL2(F_p), their normalized-Laplacian spectra and the spectral-gap report."""

from typing import Iterable, List, Optional

import numpy as np
from pydantic import BaseModel, model_validator

from ..core.context import ComputeContext, default_context
from ..core.errors import ArgumentError, InvariantViolationError
from ..graphs.cayley import CAYLEY_DEGREE, cayley_graph
from ..graphs.weighted import WeightedGraph
from ..groups.psl import enumerate_psl, generator_images, order_psl
from .jacobi import EigenDecomposition, jacobi_eigh, lapack_eigh
from .line_spectral import band_edges

MEMBERSHIP_TOL = 1e-6
TRACE_TOL = 1e-8


def build_cayley(p: int, ctx: Optional[ComputeContext] = None) -> WeightedGraph:
    """
    Weighted Cayley graph of PSL2(F_p) with the a-edges doubled.

    Args:
        p: Prime
        ctx: Compute context (vertex budget)

    Returns:
        4-regular connected graph on the group elements

    Raises:
        ArgumentError: If p is not prime
        ResourceError: If the group exceeds the vertex budget
    """
    ctx = ctx or default_context()
    elements = enumerate_psl(p, ctx)
    images = generator_images(p)
    g = cayley_graph(elements, lambda x, s: x @ images[s], name=f"PSL2(F_{p})")
    if g.boundary:
        raise InvariantViolationError(f"Cayley graph of PSL2(F_{p}) is not {CAYLEY_DEGREE}-regular")
    return g


class FiniteSpectrum(BaseModel):
    """Normalized-Laplacian spectrum of the Cayley graph of PSL2(F_p)."""

    model_config = {"frozen": True}

    p: int
    eigenvalues: List[float]
    gap: float
    residual: float
    zero_threshold: float = 1e-8

    @model_validator(mode="after")
    def consistent(self) -> "FiniteSpectrum":
        """Validate size, ordering, the kernel and the [0, 2] bound."""
        if len(self.eigenvalues) != order_psl(self.p):
            raise ValueError(
                f"expected {order_psl(self.p)} eigenvalues for p={self.p}, got {len(self.eigenvalues)}"
            )
        if any(a > b for a, b in zip(self.eigenvalues, self.eigenvalues[1:])):
            raise ValueError("eigenvalues must be sorted ascending")
        slack = max(self.residual, self.zero_threshold)
        if abs(self.eigenvalues[0]) > slack:
            raise ValueError(f"smallest eigenvalue {self.eigenvalues[0]} is not 0")
        if self.eigenvalues[0] < -slack or self.eigenvalues[-1] > 2.0 + slack:
            raise ValueError("eigenvalues must lie in [0, 2]")
        return self

    @property
    def order(self) -> int:
        return len(self.eigenvalues)

    def multiplicity(self, x: float, tol: float = MEMBERSHIP_TOL) -> int:
        return sum(1 for e in self.eigenvalues if abs(e - x) <= tol)

    def contains(self, x: float, tol: float = MEMBERSHIP_TOL) -> bool:
        return self.multiplicity(x, tol) > 0

    @property
    def zero_multiplicity(self) -> int:
        return self.multiplicity(0.0, self.zero_threshold)


def spectrum_of(
    p: int, ctx: Optional[ComputeContext] = None, method: str = "jacobi"
) -> FiniteSpectrum:
    """
    Full normalized-Laplacian spectrum of the PSL2(F_p) Cayley graph.

    Args:
        p: Prime
        ctx: Compute context
        method: "jacobi" (default) or "lapack" for a cross-check

    Returns:
        Sorted spectrum with the gap above the zero threshold

    Raises:
        ArgumentError: If p is not prime or the method is unknown
        NumericError: If the eigensolver does not converge
        InvariantViolationError: If the eigenvalues do not sum to the trace
    """
    ctx = ctx or default_context()
    if method not in ("jacobi", "lapack"):
        raise ArgumentError(f"unknown eigensolver: {method}")
    laplacian = build_cayley(p, ctx).normalized_laplacian()
    decomposition: EigenDecomposition = (
        jacobi_eigh(laplacian, ctx=ctx) if method == "jacobi" else lapack_eigh(laplacian)
    )
    values = [float(x) for x in decomposition.eigenvalues]
    threshold = ctx.config.zero_threshold
    trace_error = abs(sum(values) - float(np.trace(laplacian)))
    if trace_error > TRACE_TOL:
        raise InvariantViolationError(
            f"eigenvalue sum misses the trace for p={p} by {trace_error:.3e}",
            details={"p": p, "trace_error": trace_error, "method": method},
        )
    nonzero = [x for x in values if x > threshold]
    gap = nonzero[0] if nonzero else 0.0
    ctx.logger.info(f"Spectrum of PSL2(F_{p}): {len(values)} eigenvalues, gap {gap:.12f}")
    return FiniteSpectrum(
        p=p,
        eigenvalues=values,
        gap=gap,
        residual=decomposition.residual,
        zero_threshold=threshold,
    )


class ConjectureRow(BaseModel):
    """One prime of the spectral-gap report."""

    model_config = {"frozen": True}

    p: int
    order: int
    gap: float
    margin: float
    has_three_quarters: bool
    has_seven_quarters: bool
    zero_multiplicity: int
    residual: float

    @property
    def holds(self) -> bool:
        """True when the gap is at least the bottom of the modular-group spectrum."""
        return self.margin >= 0.0


def conjecture_row(spectrum: FiniteSpectrum) -> ConjectureRow:
    lambda0, _ = band_edges()
    return ConjectureRow(
        p=spectrum.p,
        order=spectrum.order,
        gap=spectrum.gap,
        margin=spectrum.gap - lambda0,
        has_three_quarters=spectrum.contains(0.75),
        has_seven_quarters=spectrum.contains(1.75),
        zero_multiplicity=spectrum.zero_multiplicity,
        residual=spectrum.residual,
    )


def conjecture_report(
    primes: Iterable[int],
    ctx: Optional[ComputeContext] = None,
    spectra: Optional[List[FiniteSpectrum]] = None,
) -> List[ConjectureRow]:
    """
    Compare each spectral gap with λ0 = 7/8 − R_0/2.

    Failing primes are reported with a negative margin and a warning, never dropped.

    Args:
        primes: Primes to evaluate
        ctx: Compute context
        spectra: Precomputed spectra to reuse, matched by prime

    Returns:
        One row per prime, in input order
    """
    ctx = ctx or default_context()
    known = {s.p: s for s in spectra or []}
    rows = []
    for p in primes:
        spectrum = known.get(p) or spectrum_of(p, ctx)
        row = conjecture_row(spectrum)
        if not row.holds:
            ctx.logger.warning(f"Spectral gap of PSL2(F_{p}) is {row.gap:.12f}, below lambda0")
        rows.append(row)
    return rows
