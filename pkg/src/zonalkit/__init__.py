"""Spectral analysis of zonal kernels on complex spheres.

Expansions of zonal kernels in disc polynomials, generalized spherical
convolution, convolution square roots of positive-definite kernels, and
operator-theoretic cross checks via Nystrom discretization.
"""

from ._backend import backend_name
from .convolution import (
    TestHarmonic,
    convolve_direct,
    convolve_spectral,
    funk_hecke_check,
    hermitian_selfconv_pd_check,
    random_probes,
)
from .errors import (
    ConvergenceError,
    DimensionMismatchError,
    DomainError,
    HermitianityError,
    NegativeCoefficientError,
    NegativeEigenvalueError,
    ResolutionError,
    ValidationError,
)
from .families import (
    KernelSpec,
    geometric_kernel,
    geometric_table,
    mode_kernel,
    mode_table,
    poisson_kernel,
    poisson_table,
    spec_from_dict,
    spec_to_kernel,
    spec_to_table,
    zero_kernel,
    zero_table,
)
from .operator import (
    DENSE_CAP,
    EigenSystem,
    NystromOperator,
    SqrtKernel,
    compare_roots,
    discretize_operator,
    eigenvalues_to_csv,
    hermitian_eig,
    operator_eig,
    operator_sqrt_kernel,
    table_eigenvalues,
)
from .quadrature import (
    QuadratureRule,
    circle_rule,
    disc_rule,
    gauss_jacobi_rule,
    rule_for_degree,
    rule_to_csv,
    sphere3_rule,
    sphere_mc_sample,
    surface_area,
)
from .roots import (
    RootReport,
    continuity_report,
    convolution_root,
    existence_diagnostics,
    pd_gram_check,
    verify_root,
)
from .special import (
    canonical_indices,
    disc_poly,
    disc_poly_all,
    disc_poly_monomial,
    jacobi_r,
    norm_const,
)
from .spectral import (
    CoefficientTable,
    ZonalKernel,
    clamp_inner,
    forward_transform,
    index_key,
    inner,
    l2_norm_sq,
    load_table,
    save_table,
    synthesize,
    zonal_eval,
)

__version__ = "0.1.0"

__all__ = [
    "CoefficientTable",
    "ConvergenceError",
    "DENSE_CAP",
    "DimensionMismatchError",
    "DomainError",
    "EigenSystem",
    "HermitianityError",
    "KernelSpec",
    "NegativeCoefficientError",
    "NegativeEigenvalueError",
    "NystromOperator",
    "QuadratureRule",
    "ResolutionError",
    "RootReport",
    "SqrtKernel",
    "TestHarmonic",
    "ValidationError",
    "ZonalKernel",
    "backend_name",
    "canonical_indices",
    "circle_rule",
    "clamp_inner",
    "compare_roots",
    "continuity_report",
    "convolution_root",
    "convolve_direct",
    "convolve_spectral",
    "disc_poly",
    "disc_poly_all",
    "disc_poly_monomial",
    "disc_rule",
    "discretize_operator",
    "eigenvalues_to_csv",
    "existence_diagnostics",
    "forward_transform",
    "funk_hecke_check",
    "gauss_jacobi_rule",
    "geometric_kernel",
    "geometric_table",
    "hermitian_eig",
    "hermitian_selfconv_pd_check",
    "index_key",
    "inner",
    "jacobi_r",
    "l2_norm_sq",
    "load_table",
    "mode_kernel",
    "mode_table",
    "norm_const",
    "operator_eig",
    "operator_sqrt_kernel",
    "pd_gram_check",
    "poisson_kernel",
    "poisson_table",
    "random_probes",
    "rule_for_degree",
    "rule_to_csv",
    "save_table",
    "spec_from_dict",
    "spec_to_kernel",
    "spec_to_table",
    "sphere3_rule",
    "sphere_mc_sample",
    "surface_area",
    "synthesize",
    "table_eigenvalues",
    "verify_root",
    "zero_kernel",
    "zero_table",
    "zonal_eval",
]
