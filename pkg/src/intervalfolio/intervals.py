"""Closed real intervals and comparison indices for interval inequalities.

An ``Interval`` models an uncertain quantity by its lower and upper
bound, without assuming any distribution between them.  Four indices
grade how strongly the inequality ``a <= b`` holds for two intervals:

* ``pessimistic_index`` / ``optimistic_index`` use the half-width of
  each operand and apply when the intervals overlap / are disjoint,
* ``possibility_degree`` is the span-based degree clamped to [0, 1],
* ``satisfaction_index`` is the same ratio left unclamped above 1, so a
  comfortably satisfied inequality scores higher than a barely
  satisfied one.

All comparisons are exact binary floating point; callers needing a
tolerance wrap these functions themselves.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Union

from .errors import DegeneratePair, ZeroInDivisor

__all__ = [
    "Interval",
    "IndexQuadruple",
    "OrderRelation",
    "pessimistic_index",
    "optimistic_index",
    "possibility_degree",
    "satisfaction_index",
    "index_quadruple",
    "classify_order",
    "median_leq",
]


@dataclass(frozen=True)
class Interval:
    """Closed interval [lower, upper] of finite reals."""

    lower: float
    upper: float

    def __post_init__(self):
        if math.isnan(self.lower) or math.isnan(self.upper):
            raise ValueError("interval endpoints must not be NaN")
        if math.isinf(self.lower) or math.isinf(self.upper):
            raise ValueError("interval endpoints must be finite")
        if self.lower > self.upper:
            raise ValueError(f"interval endpoints out of order: [{self.lower}, {self.upper}]")

    @property
    def median(self) -> float:
        return (self.upper + self.lower) / 2.0

    @property
    def half_width(self) -> float:
        return (self.upper - self.lower) / 2.0

    @property
    def span(self) -> float:
        """Full width upper - lower (twice the half width)."""
        return self.upper - self.lower

    @property
    def is_point(self) -> bool:
        return self.lower == self.upper

    def __contains__(self, x: float) -> bool:
        return self.lower <= x <= self.upper

    def __repr__(self) -> str:
        return f"Interval({self.lower}, {self.upper})"

    # Arithmetic.  Scalars shift both endpoints; intervals combine so the
    # result covers every pairwise outcome.

    def __add__(self, other: Union["Interval", float]) -> "Interval":
        if isinstance(other, Interval):
            return Interval(self.lower + other.lower, self.upper + other.upper)
        return Interval(self.lower + other, self.upper + other)

    __radd__ = __add__

    def __sub__(self, other: Union["Interval", float]) -> "Interval":
        if isinstance(other, Interval):
            return Interval(self.lower - other.upper, self.upper - other.lower)
        return Interval(self.lower - other, self.upper - other)

    def __neg__(self) -> "Interval":
        return Interval(-self.upper, -self.lower)

    def __mul__(self, other: Union["Interval", float]) -> "Interval":
        if isinstance(other, Interval):
            products = (
                self.lower * other.lower,
                self.lower * other.upper,
                self.upper * other.lower,
                self.upper * other.upper,
            )
            return Interval(min(products), max(products))
        if other >= 0:
            return Interval(other * self.lower, other * self.upper)
        return Interval(other * self.upper, other * self.lower)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["Interval", float]) -> "Interval":
        if not isinstance(other, Interval):
            other = Interval(other, other)
        if other.lower <= 0.0 <= other.upper:
            raise ZeroInDivisor(f"divisor {other} contains zero")
        quotients = (
            self.lower / other.lower,
            self.lower / other.upper,
            self.upper / other.lower,
            self.upper / other.upper,
        )
        return Interval(min(quotients), max(quotients))


class IndexQuadruple(NamedTuple):
    """The four comparison indices of one interval pair, in reporting
    order (optimistic, pessimistic, possibility, satisfaction).

    ``optimistic`` and ``satisfaction`` are unbounded above;
    ``pessimistic`` and ``possibility`` are clamped to [0, 1].
    """

    optimistic: float
    pessimistic: float
    possibility: float
    satisfaction: float


class OrderRelation(enum.Enum):
    """Componentwise endpoint order between two intervals."""

    LEQ = "leq"
    LT = "lt"
    INCOMPARABLE = "incomparable"


def _half_width_denominator(a: Interval, b: Interval) -> float:
    d = a.half_width + b.half_width
    if d == 0.0:
        raise DegeneratePair(f"both intervals are points: {a}, {b}")
    return d


def pessimistic_index(a: Interval, b: Interval) -> float:
    """Pessimistic degree of ``a <= b``, unclamped.

    1 when the intervals barely touch (b.lower == a.upper), above 1 when
    they are disjoint in the right order, negative when b sits well
    below a.  Zero exactly when the medians coincide.
    """
    return 1.0 + (b.lower - a.upper) / _half_width_denominator(a, b)


def optimistic_index(a: Interval, b: Interval) -> float:
    """Optimistic degree of ``a <= b``: positive only when b.lower
    clears a.upper, i.e. the inequality holds for every realization."""
    return max((b.lower - a.upper) / _half_width_denominator(a, b), 0.0)


def _span_ratio(a: Interval, b: Interval) -> float:
    denominator = a.span + b.span
    if denominator == 0.0:
        raise DegeneratePair(f"both intervals are points: {a}, {b}")
    return (b.upper - a.lower) / denominator


def possibility_degree(a: Interval, b: Interval) -> float:
    """Degree in [0, 1] to which ``a <= b`` is possible at all."""
    return min(max(_span_ratio(a, b), 0.0), 1.0)


def satisfaction_index(a: Interval, b: Interval) -> float:
    """Satisfaction degree of ``a <= b``; 0 when impossible, growing
    past 1 the further b.lower clears a.upper.

    Point pairs (both operands degenerate) reduce to comparing two
    plain numbers and return a decisive sentinel: +inf when b > a,
    0 when b < a, and 0.5 at equality (the limit of the symmetric
    case a == b).
    """
    if a.is_point and b.is_point:
        if b.upper > a.lower:
            return math.inf
        if b.upper < a.lower:
            return 0.0
        return 0.5
    return max(_span_ratio(a, b), 0.0)


def index_quadruple(a: Interval, b: Interval) -> IndexQuadruple:
    """All four indices of ``a <= b`` with reporting clamps applied.

    The optimistic and satisfaction entries are reported raw; the
    pessimistic entry is clamped into [0, 1] so disjoint pairs print 1
    rather than their unclamped value above 1.
    """
    return IndexQuadruple(
        optimistic=optimistic_index(a, b),
        pessimistic=min(max(pessimistic_index(a, b), 0.0), 1.0),
        possibility=possibility_degree(a, b),
        satisfaction=satisfaction_index(a, b),
    )


def classify_order(a: Interval, b: Interval) -> OrderRelation:
    """Componentwise order: a <= b iff both endpoints are <=, strict
    when additionally a != b.  Nested intervals are incomparable."""
    if a.lower <= b.lower and a.upper <= b.upper:
        if a == b:
            return OrderRelation.LEQ
        return OrderRelation.LT
    return OrderRelation.INCOMPARABLE


def median_leq(a: Interval, b: Interval) -> bool:
    """Median-based comparison: a precedes b iff median(a) <= median(b).

    Coarser than the endpoint order and total; exposed for completeness,
    the portfolio model itself orders risk by ``satisfaction_index``.
    """
    return a.median <= b.median
