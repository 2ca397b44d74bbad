"""Exception types shared across the package."""

from __future__ import annotations


class IntervalfolioError(Exception):
    """Base class for all package-specific errors."""


class ZeroInDivisor(IntervalfolioError, ZeroDivisionError):
    """Interval division where the divisor interval contains zero."""


class DegeneratePair(IntervalfolioError, ValueError):
    """Both intervals of a comparison are single points, so the
    comparison index has a zero denominator."""


class WindowTooLarge(IntervalfolioError, ValueError):
    """Recent-window length exceeds the number of observed periods."""


class LengthMismatch(IntervalfolioError, ValueError):
    """A per-asset vector does not match the universe size."""


class BadParameter(IntervalfolioError, ValueError):
    """Model parameter outside its admissible range."""


class MalformedLP(IntervalfolioError, ValueError):
    """Linear program with inconsistent dimensions or invalid bounds."""


class IterationLimit(IntervalfolioError, RuntimeError):
    """Simplex iteration cap reached without convergence."""

    def __init__(self, iterations: int, phase: int):
        self.iterations = iterations
        self.phase = phase
        super().__init__(
            f"simplex did not converge within {iterations} iterations (phase {phase})"
        )


class InfeasibleProblem(IntervalfolioError):
    """The constraint system admits no solution.

    ``reason`` carries a diagnostic of which constraint family is binding.
    """

    def __init__(self, message: str, reason: str = "unknown"):
        self.reason = reason
        super().__init__(message)


class UnboundedProblem(IntervalfolioError):
    """The objective can be improved without limit; for the portfolio
    model this signals a construction bug, since its feasible region is
    compact."""


class ParseError(IntervalfolioError, ValueError):
    """Malformed input file; carries the offending location."""

    def __init__(self, message: str, row: int | None = None, column: int | None = None):
        self.row = row
        self.column = column
        where = ""
        if row is not None:
            where = f" (row {row}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)


class NonFiniteValue(ParseError):
    """A parsed number is NaN or infinite."""


class SchemaError(IntervalfolioError, ValueError):
    """Configuration document is missing a field or violates an invariant."""

    def __init__(self, field: str, message: str):
        self.field = field
        self.message = message
        super().__init__(f"{field}: {message}")


class MissingCorner(IntervalfolioError, KeyError):
    """Sweep table lacks a corner cell required for objective bracketing."""
