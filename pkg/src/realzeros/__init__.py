"""Numerical laboratory for entire functions defined by cosh-weighted
cosine transforms, their squared-modulus decompositions, and the kernels
that certify their zeros stay on the real axis."""

from ._backend import available_backends, backend_name
from .errors import (
    BoundaryZeroError,
    ContourError,
    DomainError,
    EvaluationError,
    IntegrandNegative,
    NonConvergence,
    NumericalError,
    OrderError,
    ParameterError,
    PhaseResolutionError,
    PoleError,
    RealzerosError,
)
from .functions import (
    FunctionId,
    PhiTruncation,
    eval_F,
    eval_K_iz,
    eval_K_nu,
    eval_riemann_xi,
    eval_xi_general,
    eval_xi_star,
    eval_xi_star_star,
    evaluate,
    phi,
    phi_asymptote_ratio,
)
from .identities import (
    IdentityReport,
    MellinBarnesSpec,
    eval_L,
    verify_derivative_identities,
    verify_F_square_decomposition,
    verify_F_square_expansion,
    verify_K_square_decomposition,
    verify_mellin_barnes,
    verify_xistar_k_sum,
)
from .kernels import (
    KernelPoint,
    KernelPropertyReport,
    confirm_coefficient,
    f_derivatives,
    f_kernel,
    f_taylor,
    g_kernel,
    g_taylor,
    scan_kernel_properties,
    taylor_coefficient_fd,
)
from .numerics import (
    DEFAULT_SPEC,
    ComplexValue,
    QuadratureSpec,
    complex_gamma,
    hyp2f1,
    integrate_semi_infinite,
    integrate_unit_interval,
)
from .series import Polynomial, TruncatedSeries, pochhammer_polynomial
from .zeros import (
    CONTROL_Z2P1,
    JensenReport,
    Rectangle,
    RectCertificate,
    ZeroList,
    certify_reality,
    count_zeros_rectangle,
    jensen_scan,
    scan_real_zeros,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryZeroError",
    "CONTROL_Z2P1",
    "ComplexValue",
    "ContourError",
    "DEFAULT_SPEC",
    "DomainError",
    "EvaluationError",
    "FunctionId",
    "IdentityReport",
    "IntegrandNegative",
    "JensenReport",
    "KernelPoint",
    "KernelPropertyReport",
    "MellinBarnesSpec",
    "NonConvergence",
    "NumericalError",
    "OrderError",
    "ParameterError",
    "PhaseResolutionError",
    "PhiTruncation",
    "PoleError",
    "Polynomial",
    "QuadratureSpec",
    "RealzerosError",
    "RectCertificate",
    "Rectangle",
    "TruncatedSeries",
    "ZeroList",
    "available_backends",
    "backend_name",
    "certify_reality",
    "complex_gamma",
    "confirm_coefficient",
    "count_zeros_rectangle",
    "eval_F",
    "eval_K_iz",
    "eval_K_nu",
    "eval_L",
    "eval_riemann_xi",
    "eval_xi_general",
    "eval_xi_star",
    "eval_xi_star_star",
    "evaluate",
    "f_derivatives",
    "f_kernel",
    "f_taylor",
    "g_kernel",
    "g_taylor",
    "hyp2f1",
    "integrate_semi_infinite",
    "integrate_unit_interval",
    "jensen_scan",
    "phi",
    "phi_asymptote_ratio",
    "pochhammer_polynomial",
    "scan_kernel_properties",
    "scan_real_zeros",
    "taylor_coefficient_fd",
    "verify_derivative_identities",
    "verify_F_square_decomposition",
    "verify_F_square_expansion",
    "verify_K_square_decomposition",
    "verify_mellin_barnes",
    "verify_xistar_k_sum",
    "__version__",
]
