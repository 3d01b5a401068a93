"""Heat kernel of the modular group in closed form, its transfer from the line, and the series oracles."""

import math
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, model_validator

from ..core.context import ComputeContext, default_context
from ..core.errors import ArgumentError
from ..core.types import PrefactorReading, SpectralComponent
from ..graphs.cayley import gamma_ball
from ..graphs.line import LineWindow
from ..graphs.weighted import HeatSeriesResult, WeightedGraph, heat_series
from ..groups.words import IDENTITY, ReducedWord, fiber, fiber_size, pi_project
from .line_spectral import SQRT2, _r, band_edges, kernel_pr_batch
from .quadrature import integrate

THREE_QUARTERS = 0.75
SEVEN_QUARTERS = 1.75


def _ceil_half(n: int) -> int:
    return (n + 1) // 2


# Coefficients


def coeff_alpha(n: int) -> Fraction:
    """Weight of the eigenvalue 3/4: (−1)^⌈n/2⌉ 2^{−⌈n/2⌉}/6 for n >= 0, (−1)^⌈n/2⌉/6 for n < 0."""
    c = _ceil_half(n)
    sign = -1 if c % 2 else 1
    if n >= 0:
        return Fraction(sign, 6 * 2**c)
    return Fraction(sign, 6)


def coeff_beta(n: int) -> Fraction:
    """Weight of the eigenvalue 7/4: (−1)^n 2^{−⌈n/2⌉}/6 for n >= 0, (−1)^n/6 for n < 0."""
    sign = -1 if n % 2 else 1
    if n >= 0:
        return Fraction(sign, 6 * 2 ** _ceil_half(n))
    return Fraction(sign, 6)


def prefactor(n: int, reading: PrefactorReading) -> float:
    """
    Normalization of the fiber over n.

    Args:
        n: Line vertex
        reading: PRINTED uses sqrt(2)^{−⌈n/2⌉}; FIBER uses 1/sqrt(fiber_size(n))

    Returns:
        Positive factor; the two readings agree for n >= 0
    """
    if reading is PrefactorReading.FIBER:
        return 1.0 / math.sqrt(fiber_size(n))
    return 2.0 ** (-_ceil_half(n) / 2.0)


def _strip(n: int) -> float:
    """Printed prefactor removed: coefficients are prefactor(n, PRINTED) times this core."""
    return 2.0 ** (_ceil_half(n) / 2.0)


def _bracket(n: int, sign: int, s: np.ndarray) -> np.ndarray:
    c = np.cos(s)
    r = _r(s)
    m = n // 2
    if n % 2 == 0:
        cosine_part = 4.0 * r * np.sin(s) * np.cos(m * s)
        slope = -sign if n >= 0 else sign
        return slope * (SQRT2 + c) * np.sin(m * s) + cosine_part
    first = sign * (4.0 + 2.0 * SQRT2 * c) * np.sin(m * s)
    shift = 9.0 * SQRT2 / 4.0 + 4.0 * c
    if n >= 0:
        return first + (SQRT2 * r - sign * shift) * np.sin((m + 1) * s)
    return first - (SQRT2 * r + sign * shift) * np.sin((m + 1) * s)


def _gamma_core(n: int, sign: int, s: np.ndarray) -> np.ndarray:
    sin_s = np.sin(s)
    return sin_s * _bracket(n, sign, s) / (math.pi * _r(s) * (1.0 + 8.0 * sin_s**2))


def coeff_gamma(
    n: int,
    sign: int,
    s,
    reading: PrefactorReading = PrefactorReading.PRINTED,
):
    """
    Continuous-spectrum density gamma_n^±(s) of the closed-form kernel.

    Args:
        n: Line vertex
        sign: +1 for gamma^+ (paired with 7/8 + R_s/2), −1 for gamma^− (with 7/8 − R_s/2)
        s: Angle or array of angles in [0, pi]
        reading: Prefactor reading

    Returns:
        Density value(s); zero at s = 0 and s = pi
    """
    if sign not in (1, -1):
        raise ArgumentError(f"sign must be +1 or -1, got {sign}")
    arr = np.asarray(s, dtype=float)
    if np.any(arr < 0) or np.any(arr > math.pi):
        raise ArgumentError(f"angle must lie in [0, pi], got {s}")
    values = prefactor(n, reading) * _gamma_core(n, sign, arr)
    return float(values) if values.ndim == 0 else values


# Kernel values


class HeatKernelValue(BaseModel):
    """K_t(n) with its quadrature error, the transfer-route value and an optional oracle comparison."""

    model_config = {"frozen": True}

    t: float
    n: int
    value: float
    quad_error: float
    reading: PrefactorReading = PrefactorReading.FIBER
    transfer_value: Optional[float] = None
    oracle_value: Optional[float] = None
    discrepancy: Optional[float] = None

    @model_validator(mode="after")
    def nonnegative(self) -> "HeatKernelValue":
        """Validate positivity up to numerical error."""
        if self.value < -(self.quad_error + 1e-10):
            raise ValueError(f"K_{self.t}({self.n}) = {self.value} is negative")
        return self

    def with_oracle(self, oracle_value: float) -> "HeatKernelValue":
        return self.model_copy(
            update={"oracle_value": oracle_value, "discrepancy": abs(self.value - oracle_value)}
        )


def _closed_form_batch(
    t: float, ns: Sequence[int], quad_tol: float, ctx: ComputeContext
) -> Tuple[np.ndarray, float]:
    """Closed-form values with the printed prefactor stripped, one shared quadrature."""
    if t < 0:
        raise ArgumentError(f"heat time must be nonnegative, got {t}")

    def integrand(s: np.ndarray) -> np.ndarray:
        r = _r(s)
        lower = np.exp(-t * (7.0 / 8.0 - r / 2.0))
        upper = np.exp(-t * (7.0 / 8.0 + r / 2.0))
        return np.stack(
            [lower * _gamma_core(n, -1, s) + upper * _gamma_core(n, 1, s) for n in ns],
            axis=1,
        )

    result = integrate(integrand, 0.0, math.pi, quad_tol, ctx=ctx)
    points = np.array(
        [
            math.exp(-THREE_QUARTERS * t) * float(coeff_alpha(n)) * _strip(n)
            + math.exp(-SEVEN_QUARTERS * t) * float(coeff_beta(n)) * _strip(n)
            for n in ns
        ]
    )
    return points + result.value, result.error


def kernel_gamma_batch(
    t: float,
    ns: Iterable[int],
    quad_tol: Optional[float] = None,
    reading: PrefactorReading = PrefactorReading.FIBER,
    with_transfer: bool = True,
    ctx: Optional[ComputeContext] = None,
) -> List[HeatKernelValue]:
    """
    Closed-form K_t(n) for many n, with the transfer route alongside.

    Args:
        t: Time, nonnegative
        ns: Line vertices
        quad_tol: Quadrature tolerance (default from the configuration)
        reading: Prefactor reading
        with_transfer: Also evaluate K_t^pr(n)/sqrt(fiber_size(n))
        ctx: Compute context

    Returns:
        One HeatKernelValue per n, in input order
    """
    ctx = ctx or default_context()
    tol = quad_tol or ctx.config.quad_tol
    ns = list(ns)
    cores, error = _closed_form_batch(t, ns, tol, ctx)
    transfer: List[Optional[float]] = [None] * len(ns)
    if with_transfer:
        projected, _ = kernel_pr_batch(t, ns, tol, ctx=ctx)
        transfer = [value / math.sqrt(fiber_size(n)) for value, n in zip(projected, ns)]
    out = []
    for n, core, tv in zip(ns, cores, transfer):
        p = prefactor(n, reading)
        out.append(
            HeatKernelValue(
                t=t,
                n=n,
                value=float(p * core),
                quad_error=float(p * error),
                reading=reading,
                transfer_value=tv,
            )
        )
    return out


def kernel_gamma(
    t: float,
    n: int,
    quad_tol: Optional[float] = None,
    reading: PrefactorReading = PrefactorReading.FIBER,
    ctx: Optional[ComputeContext] = None,
) -> HeatKernelValue:
    """
    Heat kernel of the modular group on the fiber over n.

    Args:
        t: Time, nonnegative
        n: Signed word length
        quad_tol: Quadrature tolerance
        reading: Prefactor reading for n < 0
        ctx: Compute context

    Returns:
        Closed-form value with quadrature error and the transfer-route value

    Raises:
        ArgumentError: If t is negative
        NumericError: If the quadrature fails
    """
    return kernel_gamma_batch(t, [n], quad_tol, reading, ctx=ctx)[0]


def kernel_transfer(
    t: float, n: int, quad_tol: Optional[float] = None, ctx: Optional[ComputeContext] = None
) -> float:
    """K_t^pr(n)/sqrt(fiber_size(n)), the heat kernel carried up from the line."""
    values, _ = kernel_pr_batch(t, [n], quad_tol, ctx=ctx)
    return values[0] / math.sqrt(fiber_size(n))


def kernel_on_gamma(
    t: float, w: ReducedWord, quad_tol: Optional[float] = None, ctx: Optional[ComputeContext] = None
) -> float:
    """k_t(w) = K_t(pi(w))."""
    return kernel_gamma(t, pi_project(w), quad_tol, ctx=ctx).value


# Spectrum


class SpectrumSet(BaseModel):
    """Spectrum of the modular-group Laplacian: two bands and the points 3/4 and 7/4."""

    model_config = {"frozen": True}

    lambda0: float
    lambda1: float

    @model_validator(mode="after")
    def disjoint(self) -> "SpectrumSet":
        """Validate that bands and points are disjoint and ordered."""
        edges = [
            self.lambda0,
            SEVEN_QUARTERS - self.lambda1,
            THREE_QUARTERS,
            self.lambda1,
            SEVEN_QUARTERS - self.lambda0,
            SEVEN_QUARTERS,
        ]
        if any(a >= b for a, b in zip(edges, edges[1:])):
            raise ValueError(f"spectral components overlap: {edges}")
        return self

    @property
    def intervals(self) -> List[Tuple[float, float]]:
        return [
            (self.lambda0, SEVEN_QUARTERS - self.lambda1),
            (self.lambda1, SEVEN_QUARTERS - self.lambda0),
        ]

    @property
    def points(self) -> List[float]:
        return [THREE_QUARTERS, SEVEN_QUARTERS]

    def component(self, x: float, tol: float = 0.0) -> Optional[SpectralComponent]:
        lower, upper = self.intervals
        if lower[0] - tol <= x <= lower[1] + tol:
            return SpectralComponent.LOWER_BAND
        if abs(x - THREE_QUARTERS) <= tol:
            return SpectralComponent.POINT_THREE_QUARTERS
        if upper[0] - tol <= x <= upper[1] + tol:
            return SpectralComponent.UPPER_BAND
        if abs(x - SEVEN_QUARTERS) <= tol:
            return SpectralComponent.POINT_SEVEN_QUARTERS
        return None

    def contains(self, x: float, tol: float = 0.0) -> bool:
        return self.component(x, tol) is not None


def spectrum() -> SpectrumSet:
    """Bands [λ0, 7/4 − λ1] and [λ1, 7/4 − λ0] with λ0 = 7/8 − R_0/2 and λ1 = 7/8 + R_pi/2."""
    lambda0, lambda1 = band_edges()
    return SpectrumSet(lambda0=lambda0, lambda1=lambda1)


# Oracles


def line_oracle(t: float, ctx: Optional[ComputeContext] = None) -> HeatSeriesResult:
    """Truncated heat series on the symmetric line window from vertex 0."""
    ctx = ctx or default_context()
    window = LineWindow.symmetric(ctx.config.oracle_window)
    return heat_series(window.graph(), 0, t, ctx.config.oracle_terms, ctx)


def line_oracle_values(
    t: float, ns: Iterable[int], ctx: Optional[ComputeContext] = None
) -> Dict[int, float]:
    """Modular-group values K_t(n) = h_t^pr(0, n)/sqrt(fiber_size(n)) from the line oracle."""
    series = line_oracle(t, ctx)
    return {n: series.exact_at(n) / math.sqrt(fiber_size(n)) for n in ns}


def gamma_oracle_terms(radius: int, max_abs_n: int, ctx: Optional[ComputeContext] = None) -> int:
    """Largest term count for which ball read-outs up to |n| stay exact."""
    ctx = ctx or default_context()
    return max(0, min(ctx.config.oracle_terms, 2 * radius - max_abs_n + 1))


def gamma_oracle_values(
    t: float,
    ns: Iterable[int],
    graph: Optional[WeightedGraph] = None,
    radius: Optional[int] = None,
    ctx: Optional[ComputeContext] = None,
) -> Dict[int, float]:
    """
    K_t(n) read from the truncated heat series on a Cayley ball.

    Args:
        t: Time
        ns: Line vertices to read (every word of each fiber must agree)
        graph: Prebuilt ball (built from radius otherwise)
        radius: Ball radius (default from the configuration)
        ctx: Compute context

    Returns:
        Mapping n ↦ value at the first word of the fiber
    """
    ctx = ctx or default_context()
    ns = list(ns)
    if graph is None:
        graph = gamma_ball(radius or ctx.config.gamma_ball_radius, ctx)
    r = max(len(w) for w in graph.vertices)
    terms = gamma_oracle_terms(r, max(abs(n) for n in ns), ctx)
    series = heat_series(graph, IDENTITY, t, terms, ctx)
    out = {}
    for n in ns:
        words = fiber(n)
        values = [series.exact_at(w) for w in words]
        spread = max(values) - min(values)
        if spread > 1e-12:
            ctx.logger.warning(f"Ball oracle not constant on fiber {n}: spread {spread:.3e}")
        out[n] = values[0]
    ctx.logger.debug(f"Ball oracle at t={t}: {terms} terms, tail {series.tail_bound:.3e}")
    return out


class AdjudicationRow(BaseModel):
    """One (t, n) comparison of both prefactor readings against the ball oracle."""

    model_config = {"frozen": True}

    t: float
    n: int
    oracle: float
    printed: float
    fiber: float


class PrefactorAdjudication(BaseModel):
    """Which prefactor reading for n < 0 agrees with the Cayley-ball oracle."""

    model_config = {"frozen": True}

    rows: List[AdjudicationRow]
    max_error: Dict[PrefactorReading, float]
    tolerance: float
    consistent: List[PrefactorReading]

    @property
    def verdict(self) -> Optional[PrefactorReading]:
        return self.consistent[0] if len(self.consistent) == 1 else None


def adjudicate_prefactor(
    t_values: Optional[Iterable[float]] = None,
    ns: Iterable[int] = range(-1, -9, -1),
    graph: Optional[WeightedGraph] = None,
    tolerance: float = 1e-8,
    ctx: Optional[ComputeContext] = None,
) -> PrefactorAdjudication:
    """
    Evaluate both prefactor readings for negative n against the ball oracle.

    Args:
        t_values: Times (default from the configuration)
        ns: Negative line vertices
        graph: Prebuilt ball (default radius from the configuration)
        tolerance: Largest error of a consistent reading
        ctx: Compute context

    Returns:
        Per-row values, the worst error of each reading and the consistent readings
    """
    ctx = ctx or default_context()
    ns = list(ns)
    times = list(t_values) if t_values is not None else ctx.config.t_values
    if graph is None:
        graph = gamma_ball(ctx.config.gamma_ball_radius, ctx)
    rows = []
    worst = {reading: 0.0 for reading in PrefactorReading}
    for t in times:
        oracle = gamma_oracle_values(t, ns, graph=graph, ctx=ctx)
        printed = kernel_gamma_batch(t, ns, reading=PrefactorReading.PRINTED, with_transfer=False, ctx=ctx)
        fiber_reading = kernel_gamma_batch(t, ns, reading=PrefactorReading.FIBER, with_transfer=False, ctx=ctx)
        for n, pv, fv in zip(ns, printed, fiber_reading):
            rows.append(AdjudicationRow(t=t, n=n, oracle=oracle[n], printed=pv.value, fiber=fv.value))
            worst[PrefactorReading.PRINTED] = max(worst[PrefactorReading.PRINTED], abs(pv.value - oracle[n]))
            worst[PrefactorReading.FIBER] = max(worst[PrefactorReading.FIBER], abs(fv.value - oracle[n]))
    consistent = [reading for reading in PrefactorReading if worst[reading] <= tolerance]
    report = PrefactorAdjudication(rows=rows, max_error=worst, tolerance=tolerance, consistent=consistent)
    if report.verdict is None:
        ctx.logger.warning(f"Prefactor adjudication inconclusive: errors {worst}")
    else:
        ctx.logger.info(f"Prefactor adjudication: {report.verdict.value} reading matches the oracle")
    return report


class MassReport(BaseModel):
    """Total heat Σ_n fiber_size(n) K_t(n) over |n| <= radius."""

    model_config = {"frozen": True}

    t: float
    radius: int
    total: float
    quad_error: float


def mass_sum(
    t: float,
    radius: Optional[int] = None,
    quad_tol: float = 1e-13,
    ctx: Optional[ComputeContext] = None,
) -> MassReport:
    """
    Sum the closed-form kernel over a ball, fiber by fiber; equals 1 up to the heat beyond the ball.

    The fiber sizes reach 2^{radius/2}, so the default tolerance is tight.
    """
    ctx = ctx or default_context()
    r = radius or ctx.config.mass_radius
    ns = list(range(-r, r + 1))
    values = kernel_gamma_batch(t, ns, quad_tol, with_transfer=False, ctx=ctx)
    total = sum(fiber_size(v.n) * v.value for v in values)
    error = sum(fiber_size(v.n) * v.quad_error for v in values)
    return MassReport(t=t, radius=r, total=total, quad_error=error)
