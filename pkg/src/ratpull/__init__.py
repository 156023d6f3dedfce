"""Exact rational pullback of Weil divisors from intersection data.

Given the intersection matrix phi[i][j] = (E_i . C_j) of exceptional
divisors against chosen vertical curves, decide whether the configuration
supports a rational pullback, certify that A = -phi^T is an invertible
M-matrix by three independent exact checks, and solve m @ (-phi) = lambda
for the unique nonnegative coefficient vector. All verdict-relevant
arithmetic is exact (stdlib Fractions); floats appear only in the advisory
spectral estimate.
"""

from .errors import (
    AdjacencyViolation,
    DimensionCapExceeded,
    DimensionMismatch,
    DisconnectedConfiguration,
    InputError,
    InternalInconsistency,
    InvalidGraph,
    InvariantViolation,
    NegativeLambda,
    NonSquare,
    NoRationalPullback,
    NotFittedError,
    NotMMatrix,
    NotNegativeDefinite,
    NotSymmetric,
    NotZPattern,
    ParseError,
    RatpullError,
    Refusal,
    SignViolation,
    Singular,
    ZeroDenominator,
)
from .ratmat import (
    RatMatrix,
    Rational,
    RatVector,
    as_rational,
    as_vector,
    det,
    format_rational,
    inverse,
    mat_mul,
    mat_vec,
    parse_rational,
    rat,
    scale,
    solve_left,
    transpose,
    vec_mat,
)
from .mmatrix import (
    MMatrixReport,
    SpectralEstimate,
    ZMatrix,
    as_z_matrix,
    check_certificate,
    check_inverse_nonneg,
    check_minors,
    is_invertible_m_matrix,
    spectral_estimate,
    verify_certificate,
)
from .pullback import (
    DivisorInput,
    ExtraCurve,
    IntersectionConfig,
    PullbackResult,
    SmallResolutionCheck,
    SmallResolutionVerdict,
    ValidationReport,
    certify,
    check_curve_ratio,
    compute_pullback,
    detect_small_resolution,
    mumford_surface_pullback,
    negated_transpose,
    uniqueness_probe,
    validate_signs,
    verify_on_curve,
)
from .configlib import (
    DualGraph,
    ExampleEntry,
    builtin_ade_graphs,
    builtin_examples,
    chain_graph,
    check_example,
    config_from_dict,
    config_to_dict,
    divisor_from_dict,
    divisor_to_dict,
    get_example,
    graph_from_dict,
    graph_to_config,
    graph_to_dict,
    hirzebruch_jung_chain,
    load_config,
    load_divisor,
    load_graph,
    report_to_dict,
    result_to_dict,
    save_config,
    save_divisor,
    save_graph,
)
from .estimators import (
    BaseEstimator,
    MumfordSurfacePullback,
    RationalPullback,
    check_config,
    check_is_fitted,
    check_lambda_batch,
)

__version__ = "0.1.0"

__all__ = [
    "AdjacencyViolation",
    "BaseEstimator",
    "DimensionCapExceeded",
    "DimensionMismatch",
    "DisconnectedConfiguration",
    "DivisorInput",
    "DualGraph",
    "ExampleEntry",
    "ExtraCurve",
    "InputError",
    "InternalInconsistency",
    "IntersectionConfig",
    "InvalidGraph",
    "InvariantViolation",
    "MMatrixReport",
    "MumfordSurfacePullback",
    "NegativeLambda",
    "NonSquare",
    "NoRationalPullback",
    "NotFittedError",
    "NotMMatrix",
    "NotNegativeDefinite",
    "NotSymmetric",
    "NotZPattern",
    "ParseError",
    "PullbackResult",
    "RatMatrix",
    "Rational",
    "RationalPullback",
    "RatpullError",
    "RatVector",
    "Refusal",
    "SignViolation",
    "SmallResolutionCheck",
    "SmallResolutionVerdict",
    "SpectralEstimate",
    "Singular",
    "ValidationReport",
    "ZMatrix",
    "ZeroDenominator",
    "as_rational",
    "as_vector",
    "as_z_matrix",
    "builtin_ade_graphs",
    "builtin_examples",
    "certify",
    "chain_graph",
    "check_certificate",
    "check_config",
    "check_curve_ratio",
    "check_example",
    "check_inverse_nonneg",
    "check_is_fitted",
    "check_lambda_batch",
    "check_minors",
    "compute_pullback",
    "config_from_dict",
    "config_to_dict",
    "det",
    "detect_small_resolution",
    "divisor_from_dict",
    "divisor_to_dict",
    "format_rational",
    "get_example",
    "graph_from_dict",
    "graph_to_config",
    "graph_to_dict",
    "hirzebruch_jung_chain",
    "inverse",
    "is_invertible_m_matrix",
    "load_config",
    "load_divisor",
    "load_graph",
    "mat_mul",
    "mat_vec",
    "mumford_surface_pullback",
    "negated_transpose",
    "parse_rational",
    "rat",
    "report_to_dict",
    "result_to_dict",
    "save_config",
    "save_divisor",
    "save_graph",
    "scale",
    "solve_left",
    "spectral_estimate",
    "transpose",
    "uniqueness_probe",
    "validate_signs",
    "vec_mat",
    "verify_certificate",
    "verify_on_curve",
]
