"""Spectral resolution of the projected line Laplacian and the projected heat kernel."""

import math
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, field_validator

from ..core.context import ComputeContext, default_context
from ..core.errors import ArgumentError
from ..core.qsqrt2 import QSqrt2
from .quadrature import integrate

ArrayLike = Union[float, np.ndarray]

SQRT2 = math.sqrt(2.0)
SQRT6 = math.sqrt(6.0)
SIGNS = (1, -1)


def _require_sign(name: str, v: int) -> int:
    if v not in SIGNS:
        raise ArgumentError(f"{name} must be +1 or -1, got {v}")
    return v


def _require_angle(x: ArrayLike) -> None:
    arr = np.asarray(x, dtype=float)
    if np.any(arr < -1e-12) or np.any(arr > math.pi + 1e-12):
        raise ArgumentError(f"angle must lie in [0, pi], got {x}")


def _r(x: ArrayLike) -> ArrayLike:
    return np.sqrt(25.0 / 16.0 + SQRT2 * np.cos(x))


def r_of(x: ArrayLike) -> ArrayLike:
    """
    R_x = sqrt(25/16 + sqrt(2) cos x), strictly decreasing on [0, pi].

    Raises:
        ArgumentError: If x is outside [0, pi]
    """
    _require_angle(x)
    return _r(x)


def lambda_of(mu: int, x: ArrayLike) -> ArrayLike:
    """Generalized eigenvalue 7/8 − (mu/2) R_x."""
    _require_sign("mu", mu)
    return 7.0 / 8.0 - 0.5 * mu * r_of(x)


def spectral_weight(epsilon: int, x: ArrayLike) -> ArrayLike:
    """H_eps(x) = 2 pi R_x (2 R_x − eps (2 + sqrt(2) cos x)), positive on [0, pi]."""
    _require_sign("epsilon", epsilon)
    r = _r(x)
    return 2.0 * math.pi * r * (2.0 * r - epsilon * (2.0 + SQRT2 * np.cos(x)))


class SpectralWeight(BaseModel):
    """Density H_eps of the continuous spectral measure for one sign eps."""

    model_config = {"frozen": True}

    epsilon: int

    @field_validator("epsilon")
    @classmethod
    def sign(cls, v: int) -> int:
        if v not in SIGNS:
            raise ValueError("epsilon must be +1 or -1")
        return v

    def __call__(self, x: ArrayLike) -> ArrayLike:
        return spectral_weight(self.epsilon, x)


# Discrete spectrum


def discrete_coefficient(epsilon: int, m: int) -> QSqrt2:
    """Exact q with f_eps(m) = q/sqrt(6)."""
    _require_sign("epsilon", epsilon)
    if m < 0:
        return discrete_coefficient(epsilon, -m - 1) * epsilon
    n = m // 2
    power = QSqrt2(0, -epsilon) ** (-n)  # (−eps sqrt2)^{−n}
    if m % 2 == 0:
        return -power
    return QSqrt2(0, 1) / 2 * power


def eval_discrete(epsilon: int, m: int) -> float:
    """
    Normalized eigenfunction of the eigenvalue (5 − 2 eps)/4.

    Args:
        epsilon: +1 (eigenvalue 3/4) or −1 (eigenvalue 7/4)
        m: Line vertex

    Returns:
        f_eps(m); negative m follow f(−m − 1) = eps f(m)
    """
    return float(discrete_coefficient(epsilon, m)) / SQRT6


class DiscreteEigenpair(BaseModel):
    """An eigenvalue of the projected Laplacian with its unit-norm eigenfunction."""

    model_config = {"frozen": True}

    epsilon: int

    @field_validator("epsilon")
    @classmethod
    def sign(cls, v: int) -> int:
        if v not in SIGNS:
            raise ValueError("epsilon must be +1 or -1")
        return v

    @property
    def eigenvalue(self) -> float:
        return (5 - 2 * self.epsilon) / 4

    def __call__(self, m: int) -> float:
        return eval_discrete(self.epsilon, m)


DISCRETE_EIGENPAIRS = (DiscreteEigenpair(epsilon=1), DiscreteEigenpair(epsilon=-1))


# Continuous spectrum


def _generalized(x: np.ndarray, mu: int, epsilon: int, m: int) -> np.ndarray:
    if m < 0:
        return epsilon * _generalized(x, mu, epsilon, -m - 1)
    r = _r(x)
    if m % 2 == 0:
        n = m // 2
        return (1.0 + epsilon / 4.0 - epsilon * mu * r) * np.sin(n * x) + np.sin((n + 1) * x) / SQRT2
    n = (m - 1) // 2
    return (mu * r + 0.25 - epsilon) * np.sin((n + 1) * x) - epsilon * np.sin(n * x) / SQRT2


def eval_generalized(x: float, mu: int, epsilon: int, m: int) -> float:
    """
    Generalized eigenfunction f_{x,mu,eps}(m) of the eigenvalue 7/8 − (mu/2) R_x.

    Args:
        x: Spectral parameter in [0, pi]
        mu: Branch sign
        epsilon: Mirror parity, f(−m − 1) = eps f(m)
        m: Line vertex
    """
    _require_angle(x)
    _require_sign("mu", mu)
    _require_sign("epsilon", epsilon)
    return float(_generalized(np.asarray(x, dtype=float), mu, epsilon, m))


class GeneralizedEigenfunction(BaseModel):
    """Bounded solution of the eigenvalue stencil indexing the continuous spectrum."""

    model_config = {"frozen": True}

    x: float
    mu: int
    epsilon: int

    @field_validator("x")
    @classmethod
    def angle(cls, v: float) -> float:
        if not 0.0 <= v <= math.pi:
            raise ValueError("x must lie in [0, pi]")
        return v

    @field_validator("mu", "epsilon")
    @classmethod
    def sign(cls, v: int) -> int:
        if v not in SIGNS:
            raise ValueError("signs must be +1 or -1")
        return v

    @property
    def eigenvalue(self) -> float:
        return float(lambda_of(self.mu, self.x))

    def __call__(self, m: int) -> float:
        return eval_generalized(self.x, self.mu, self.epsilon, m)


# Spectral measure


class SpectralValue(BaseModel):
    """A spectral-measure integral with its quadrature error estimate."""

    model_config = {"frozen": True}

    value: float
    quad_error: float


def _coefficients(
    t: float,
    pairs: Sequence[Tuple[int, int]],
    quad_tol: float,
    ctx: ComputeContext,
) -> Tuple[np.ndarray, float]:
    """Σ_eps e^{−t λ_eps} f_eps(m) f_eps(n) plus the continuous part, for each (m, n)."""
    if t < 0:
        raise ArgumentError(f"heat time must be nonnegative, got {t}")
    index = sorted({k for pair in pairs for k in pair})
    col = {k: i for i, k in enumerate(index)}
    left = np.array([col[m] for m, _ in pairs])
    right = np.array([col[n] for _, n in pairs])

    discrete = np.zeros(len(pairs))
    for pair in DISCRETE_EIGENPAIRS:
        values = np.array([pair(k) for k in index])
        discrete += math.exp(-t * pair.eigenvalue) * values[left] * values[right]

    def integrand(x: np.ndarray) -> np.ndarray:
        total = np.zeros((x.shape[0], len(pairs)))
        for mu in SIGNS:
            decay = np.exp(-t * (7.0 / 8.0 - 0.5 * mu * _r(x)))
            for epsilon in SIGNS:
                f = np.stack([_generalized(x, mu, epsilon, k) for k in index], axis=1)
                density = decay / spectral_weight(mu * epsilon, x)
                total += density[:, None] * f[:, left] * f[:, right]
        return total

    result = integrate(integrand, 0.0, math.pi, quad_tol, ctx=ctx)
    return discrete + result.value, result.error


def completeness_entry(
    m: int, n: int, quad_tol: Optional[float] = None, ctx: Optional[ComputeContext] = None
) -> float:
    """
    Discrete plus continuous spectral resolution of the identity at (m, n); equals δ_{m,n}.

    Raises:
        NumericError: If the quadrature does not converge
    """
    ctx = ctx or default_context()
    values, _ = _coefficients(0.0, [(m, n)], quad_tol or ctx.config.quad_tol, ctx)
    return float(values[0])


def completeness_matrix(
    indices: Iterable[int], quad_tol: Optional[float] = None, ctx: Optional[ComputeContext] = None
) -> Tuple[np.ndarray, float]:
    """
    Resolution of the identity on a block of indices.

    Returns:
        Matrix C(m, n) and the quadrature error estimate
    """
    ctx = ctx or default_context()
    idx = list(indices)
    pairs = [(m, n) for m in idx for n in idx]
    values, error = _coefficients(0.0, pairs, quad_tol or ctx.config.quad_tol, ctx)
    return values.reshape(len(idx), len(idx)), error


def kernel_pr(
    t: float,
    n: int,
    quad_tol: Optional[float] = None,
    m: int = 0,
    ctx: Optional[ComputeContext] = None,
) -> SpectralValue:
    """
    Projected heat kernel h_t(m, n) from the spectral measure; K_t(n) = h_t(0, n).

    Args:
        t: Time, nonnegative
        n: Column index
        quad_tol: Quadrature tolerance (default from the configuration)
        m: Row index
        ctx: Compute context

    Returns:
        Value and quadrature error estimate
    """
    ctx = ctx or default_context()
    values, error = _coefficients(t, [(m, n)], quad_tol or ctx.config.quad_tol, ctx)
    return SpectralValue(value=float(values[0]), quad_error=error)


def kernel_pr_batch(
    t: float,
    ns: Iterable[int],
    quad_tol: Optional[float] = None,
    m: int = 0,
    ctx: Optional[ComputeContext] = None,
) -> Tuple[List[float], float]:
    """h_t(m, n) for many n with one shared quadrature."""
    ctx = ctx or default_context()
    ns = list(ns)
    values, error = _coefficients(t, [(m, n) for n in ns], quad_tol or ctx.config.quad_tol, ctx)
    return [float(v) for v in values], error


def band_edges() -> Tuple[float, float]:
    """Bottom of the spectrum lambda_0 and the lower edge lambda_1 of the upper band."""
    return float(lambda_of(1, 0.0)), float(lambda_of(-1, math.pi))
