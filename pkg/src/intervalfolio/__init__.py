"""Portfolio selection on interval-valued expected returns.

The package estimates a per-asset expected-return interval from
history plus a forecast, measures downside risk as an interval-valued
mean shortfall, grades the risk constraint with a satisfaction index
of interval inequalities, and reduces the whole selection problem to a
linear program solved by a built-in bounded-variable simplex.  A CLI,
an HTTP service, and scikit-learn style estimators sit on top.
"""

from .errors import (
    BadParameter,
    DegeneratePair,
    InfeasibleProblem,
    IntervalfolioError,
    IterationLimit,
    LengthMismatch,
    MalformedLP,
    MissingCorner,
    NonFiniteValue,
    ParseError,
    SchemaError,
    UnboundedProblem,
    WindowTooLarge,
    ZeroInDivisor,
)
from .estimation import (
    DEFAULT_RECENT_WINDOW,
    ReturnFactors,
    ReturnHistory,
    arithmetic_mean,
    estimate_universe,
    return_interval,
    tendency_factor,
)
from .estimators import IntervalPortfolioSelector, IntervalReturnEstimator
from .intervals import (
    IndexQuadruple,
    Interval,
    OrderRelation,
    classify_order,
    index_quadruple,
    median_leq,
    optimistic_index,
    pessimistic_index,
    possibility_degree,
    satisfaction_index,
)
from .io import (
    ProblemConfig,
    assemble_problem,
    estimate_document,
    interval_object,
    parse_config,
    parse_config_data,
    parse_config_text,
    parse_history,
    parse_history_text,
    render_document,
    serialize_config,
    serialize_history,
    solution_document,
    sweep_document,
)
from .model import (
    AssetUniverse,
    PortfolioProblem,
    PortfolioSolution,
    VariableLayout,
    build_program,
    deviation_interval,
    gross_return_interval,
    net_return_interval,
    risk_constraint_holds,
    risk_interval,
    solve_portfolio,
    transaction_cost,
)
from .simplex import (
    LPResult,
    LPStatus,
    StandardLP,
    VerificationReport,
    solve_lp,
    verify_solution,
)
from .sweep import (
    DEFAULT_ALPHAS,
    DEFAULT_LAMBDAS,
    MonotonicityReport,
    MonotonicityViolation,
    SweepRow,
    SweepTable,
    bracket_values,
    check_monotonicity,
    problem_fingerprint,
    sweep,
)

__version__ = "0.1.0"

__all__ = [
    "AssetUniverse",
    "BadParameter",
    "DEFAULT_ALPHAS",
    "DEFAULT_LAMBDAS",
    "DEFAULT_RECENT_WINDOW",
    "DegeneratePair",
    "IndexQuadruple",
    "InfeasibleProblem",
    "Interval",
    "IntervalPortfolioSelector",
    "IntervalReturnEstimator",
    "IntervalfolioError",
    "IterationLimit",
    "LPResult",
    "LPStatus",
    "LengthMismatch",
    "MalformedLP",
    "MissingCorner",
    "MonotonicityReport",
    "MonotonicityViolation",
    "NonFiniteValue",
    "OrderRelation",
    "ParseError",
    "PortfolioProblem",
    "PortfolioSolution",
    "ProblemConfig",
    "ReturnFactors",
    "ReturnHistory",
    "SchemaError",
    "StandardLP",
    "SweepRow",
    "SweepTable",
    "UnboundedProblem",
    "VariableLayout",
    "VerificationReport",
    "WindowTooLarge",
    "ZeroInDivisor",
    "arithmetic_mean",
    "assemble_problem",
    "bracket_values",
    "build_program",
    "check_monotonicity",
    "classify_order",
    "deviation_interval",
    "estimate_document",
    "estimate_universe",
    "gross_return_interval",
    "index_quadruple",
    "interval_object",
    "median_leq",
    "net_return_interval",
    "optimistic_index",
    "parse_config",
    "parse_config_data",
    "parse_config_text",
    "parse_history",
    "parse_history_text",
    "pessimistic_index",
    "possibility_degree",
    "problem_fingerprint",
    "render_document",
    "return_interval",
    "risk_constraint_holds",
    "risk_interval",
    "satisfaction_index",
    "serialize_config",
    "serialize_history",
    "solution_document",
    "solve_lp",
    "solve_portfolio",
    "sweep",
    "sweep_document",
    "tendency_factor",
    "transaction_cost",
    "verify_solution",
]
