"""Exact perturbation-series solutions of the generalized Burgers-Huxley
equation, verified against the exact traveling-wave fronts."""

from .config import (
    ConfigConflictError,
    ConfigError,
    ConfigNumberError,
    ConfigSyntaxError,
    RunConfig,
    parse_config,
    render_config,
)
from .errors import (
    AlgebraDomainError,
    BHError,
    ContractViolation,
    EvaluationError,
    ProblemDomainError,
    UnsupportedProblemError,
)
from .expalgebra import ExpRational, LaurentPoly
from .hpm import (
    HPMExpansion,
    TimePolynomial,
    initial_guess,
    max_taylor_deviation,
    run_hpm,
)
from .problem import BHProblem, case_preset
from .scalars import (
    DEFAULT_DIGITS,
    BigRational,
    QuadraticNumber,
    sqrt_rational,
    squarefree_decompose,
    working_dps,
)
from .tables import (
    ErrorTable,
    GoldenComparison,
    build_error_table,
    emit_table,
    golden_compare,
    read_table_csv,
    relative_error_table,
)
from .waves import TravelingWave, deng_wave, pde_residual

__version__ = "0.1.0"

__all__ = [
    "AlgebraDomainError",
    "BHError",
    "BHProblem",
    "BigRational",
    "ConfigConflictError",
    "ConfigError",
    "ConfigNumberError",
    "ConfigSyntaxError",
    "ContractViolation",
    "DEFAULT_DIGITS",
    "ErrorTable",
    "EvaluationError",
    "ExpRational",
    "GoldenComparison",
    "HPMExpansion",
    "LaurentPoly",
    "ProblemDomainError",
    "QuadraticNumber",
    "RunConfig",
    "TimePolynomial",
    "TravelingWave",
    "UnsupportedProblemError",
    "build_error_table",
    "case_preset",
    "deng_wave",
    "emit_table",
    "golden_compare",
    "initial_guess",
    "max_taylor_deviation",
    "parse_config",
    "pde_residual",
    "read_table_csv",
    "relative_error_table",
    "render_config",
    "run_hpm",
    "sqrt_rational",
    "squarefree_decompose",
    "working_dps",
    "__version__",
]
