"""modheat - Heat kernel of the modular group through its projection onto a weighted line."""

from .__version__ import __version__
from .core import (
    ArgumentError,
    BoundaryError,
    ComputeContext,
    InvariantViolationError,
    Letter,
    ModheatError,
    NumericError,
    OutputFormat,
    PrefactorReading,
    PreconditionError,
    QSqrt2,
    ResourceError,
    RunConfig,
    SpectralComponent,
    default_context,
    set_default_context,
)
from .groups import ReducedWord, fiber, fiber_size, genus, pi_project, word
from .graphs import LineWindow, WeightedGraph, gamma_ball, heat_series, is_covering, quotient
from .spectral import (
    FiniteSpectrum,
    HeatKernelValue,
    SpectrumSet,
    adjudicate_prefactor,
    kernel_gamma,
    kernel_pr,
    spectrum,
    spectrum_of,
    symmetric_eigenvalues,
)


__all__ = [
    "__version__",
    "ArgumentError",
    "BoundaryError",
    "ComputeContext",
    "InvariantViolationError",
    "Letter",
    "ModheatError",
    "NumericError",
    "OutputFormat",
    "PrefactorReading",
    "PreconditionError",
    "QSqrt2",
    "ResourceError",
    "RunConfig",
    "SpectralComponent",
    "default_context",
    "set_default_context",
    "ReducedWord",
    "fiber",
    "fiber_size",
    "genus",
    "pi_project",
    "word",
    "LineWindow",
    "WeightedGraph",
    "gamma_ball",
    "heat_series",
    "is_covering",
    "quotient",
    "FiniteSpectrum",
    "HeatKernelValue",
    "SpectrumSet",
    "adjudicate_prefactor",
    "kernel_gamma",
    "kernel_pr",
    "spectrum",
    "spectrum_of",
    "symmetric_eigenvalues",
]
