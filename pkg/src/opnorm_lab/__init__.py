"""Numerical laboratory for multiplication operators on the unit disk.

Computes Hardy, weighted Bergman, and boundary sup norms, the norms of
evaluation functionals and their extremal functions, operator norms of
multiplication operators, and both sides of the inequality between the
norm of an integrated operator family and the integral of the per-t norms,
together with certificates for when the two coincide.
"""

from .certify import (
    BoundaryArgmax,
    CertCandidate,
    CertificateReport,
    WxReport,
    argmax_set,
    certify_equality,
    check_wx,
    i1_i2_residuals,
)
from .errors import (
    DomainError,
    EvaluationError,
    OpnormLabError,
    ParseError,
    QuadratureError,
)
from .operators import (
    ApproxEvalMap,
    GapReport,
    PerTSup,
    gap_report,
    integrated_symbol,
    maximizing_sequence,
    mult_operator_norm,
)
from .quadrature import gauss_rule_01, integrate_adaptive_01, jacobi_rule_01
from .reports import SCHEMA_ID, emit_report
from .spaces import (
    EvalFunctionalData,
    QuadConfig,
    SpaceSpec,
    SupNormResult,
    bergman_norm,
    eval_functional_data,
    eval_functional_norm,
    extremal_function,
    hardy_norm,
    multiplied_extremal_norm,
    space_norm,
    sup_norm,
)
from .symbols import (
    Add,
    Blaschke,
    Const,
    Div,
    Exp,
    IntPow,
    Mul,
    Neg,
    ParamT,
    Sub,
    SymbolExpr,
    SymbolFamily,
    VarZ,
    eval_symbol,
    format_expr,
    format_symbol,
    frozen_symbol,
    integrate_family_at,
    is_boundary_continuous,
    parse_symbol,
)

__version__ = "0.1.0"

__all__ = [
    "Add",
    "ApproxEvalMap",
    "Blaschke",
    "BoundaryArgmax",
    "CertCandidate",
    "CertificateReport",
    "Const",
    "Div",
    "DomainError",
    "EvalFunctionalData",
    "EvaluationError",
    "Exp",
    "GapReport",
    "IntPow",
    "Mul",
    "Neg",
    "OpnormLabError",
    "ParamT",
    "ParseError",
    "PerTSup",
    "QuadConfig",
    "QuadratureError",
    "SCHEMA_ID",
    "SpaceSpec",
    "Sub",
    "SupNormResult",
    "SymbolExpr",
    "SymbolFamily",
    "VarZ",
    "WxReport",
    "argmax_set",
    "bergman_norm",
    "certify_equality",
    "check_wx",
    "emit_report",
    "eval_functional_data",
    "eval_functional_norm",
    "eval_symbol",
    "extremal_function",
    "format_expr",
    "format_symbol",
    "frozen_symbol",
    "gap_report",
    "gauss_rule_01",
    "hardy_norm",
    "i1_i2_residuals",
    "integrate_adaptive_01",
    "integrate_family_at",
    "integrated_symbol",
    "is_boundary_continuous",
    "jacobi_rule_01",
    "maximizing_sequence",
    "mult_operator_norm",
    "multiplied_extremal_norm",
    "parse_symbol",
    "space_norm",
    "sup_norm",
]
