"""Run configuration shared by the library and the command line."""

from typing import List

from pydantic import BaseModel, field_validator

from .types import OutputFormat


class RunConfig(BaseModel):
    """Every tunable of a computation, with validated defaults."""

    model_config = {"frozen": True}

    quad_tol: float = 1e-10
    quad_max_panels: int = 4096
    oracle_window: int = 80
    oracle_terms: int = 65
    gamma_ball_radius: int = 24
    zero_threshold: float = 1e-8
    output_format: OutputFormat = OutputFormat.CSV
    vertex_budget: int = 200_000
    t_values: List[float] = [0.5, 1.0, 2.0, 5.0]
    primes: List[int] = [2, 3, 5, 7]
    meq_k_max: int = 8
    completeness_radius: int = 10
    mass_radius: int = 70
    jacobi_tol: float = 1e-10
    jacobi_max_sweeps: int = 50
    log_level: str = "WARNING"
    output_dir: str = "."

    @field_validator("quad_tol", "zero_threshold", "jacobi_tol")
    @classmethod
    def positive_tolerance(cls, v: float) -> float:
        """Validate that tolerances are strictly positive."""
        if not v > 0:
            raise ValueError("tolerances must be strictly positive")
        return v

    @field_validator(
        "oracle_window",
        "oracle_terms",
        "gamma_ball_radius",
        "vertex_budget",
        "quad_max_panels",
        "jacobi_max_sweeps",
        "mass_radius",
    )
    @classmethod
    def positive_integer(cls, v: int) -> int:
        """Validate that windows, radii and caps are positive."""
        if v <= 0:
            raise ValueError("windows, radii and caps must be positive integers")
        return v

    @field_validator("meq_k_max", "completeness_radius")
    @classmethod
    def nonnegative_integer(cls, v: int) -> int:
        """Validate that check ranges are nonnegative."""
        if v < 0:
            raise ValueError("check ranges must be nonnegative")
        return v

    @field_validator("t_values")
    @classmethod
    def nonnegative_times(cls, v: List[float]) -> List[float]:
        """Validate that heat times are nonnegative."""
        if any(t < 0 for t in v):
            raise ValueError("heat times must be nonnegative")
        return v

    @field_validator("primes")
    @classmethod
    def prime_list(cls, v: List[int]) -> List[int]:
        """Validate that every listed modulus is prime."""
        from ..groups.psl import is_prime

        composite = [p for p in v if not is_prime(p)]
        if composite:
            raise ValueError(f"not a prime: {composite[0]}")
        return v

    @field_validator("log_level")
    @classmethod
    def known_level(cls, v: str) -> str:
        """Normalize and validate the log level name."""
        level = v.upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"unknown log level: {v}")
        return level
