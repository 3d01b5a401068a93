"""Spectral theory: the projected line, the modular-group heat kernel and finite quotients."""

from .quadrature import QuadratureResult, composite_nodes, integrate
from .line_spectral import (
    DISCRETE_EIGENPAIRS,
    DiscreteEigenpair,
    GeneralizedEigenfunction,
    SpectralValue,
    SpectralWeight,
    band_edges,
    completeness_entry,
    completeness_matrix,
    discrete_coefficient,
    eval_discrete,
    eval_generalized,
    kernel_pr,
    kernel_pr_batch,
    lambda_of,
    r_of,
    spectral_weight,
)
from .heat_kernel import (
    AdjudicationRow,
    HeatKernelValue,
    MassReport,
    PrefactorAdjudication,
    SpectrumSet,
    adjudicate_prefactor,
    coeff_alpha,
    coeff_beta,
    coeff_gamma,
    gamma_oracle_values,
    kernel_gamma,
    kernel_gamma_batch,
    kernel_on_gamma,
    kernel_transfer,
    line_oracle,
    line_oracle_values,
    mass_sum,
    prefactor,
    spectrum,
)
from .jacobi import EigenDecomposition, jacobi_eigh, lapack_eigh, symmetric_eigenvalues
from .finite import (
    ConjectureRow,
    FiniteSpectrum,
    build_cayley,
    conjecture_report,
    conjecture_row,
    spectrum_of,
)

__all__ = [
    "QuadratureResult",
    "composite_nodes",
    "integrate",
    "DISCRETE_EIGENPAIRS",
    "DiscreteEigenpair",
    "GeneralizedEigenfunction",
    "SpectralValue",
    "SpectralWeight",
    "band_edges",
    "completeness_entry",
    "completeness_matrix",
    "discrete_coefficient",
    "eval_discrete",
    "eval_generalized",
    "kernel_pr",
    "kernel_pr_batch",
    "lambda_of",
    "r_of",
    "spectral_weight",
    "AdjudicationRow",
    "HeatKernelValue",
    "MassReport",
    "PrefactorAdjudication",
    "SpectrumSet",
    "adjudicate_prefactor",
    "coeff_alpha",
    "coeff_beta",
    "coeff_gamma",
    "gamma_oracle_values",
    "kernel_gamma",
    "kernel_gamma_batch",
    "kernel_on_gamma",
    "kernel_transfer",
    "line_oracle",
    "line_oracle_values",
    "mass_sum",
    "prefactor",
    "spectrum",
    "EigenDecomposition",
    "jacobi_eigh",
    "lapack_eigh",
    "symmetric_eigenvalues",
    "ConjectureRow",
    "FiniteSpectrum",
    "build_cayley",
    "conjecture_report",
    "conjecture_row",
    "spectrum_of",
]
