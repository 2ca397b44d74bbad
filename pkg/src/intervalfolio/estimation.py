"""Expected-return intervals from three per-asset factors.

Each risky asset gets an interval spanning the minimum and maximum of:

* the arithmetic mean of its full return history,
* the mean of its most recent observations (the tendency factor),
* an externally supplied forecast.

Returns are simple per-period rates given as decimals (0.0838 means
8.38% per period).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatch, WindowTooLarge
from .intervals import Interval
from .validation import check_returns_matrix, check_vector

DEFAULT_RECENT_WINDOW = 5

__all__ = [
    "DEFAULT_RECENT_WINDOW",
    "ReturnHistory",
    "ReturnFactors",
    "arithmetic_mean",
    "tendency_factor",
    "return_interval",
    "estimate_universe",
]


@dataclass(frozen=True)
class ReturnHistory:
    """Historical simple returns, one row per period, one column per
    risky asset, in universe order."""

    returns: np.ndarray
    periods: tuple[str, ...] = ()
    assets: tuple[str, ...] = ()

    def __post_init__(self):
        matrix = check_returns_matrix(self.returns)
        object.__setattr__(self, "returns", matrix)
        object.__setattr__(self, "periods", tuple(self.periods) or tuple(
            str(t + 1) for t in range(matrix.shape[0])
        ))
        object.__setattr__(self, "assets", tuple(self.assets) or tuple(
            f"A{j + 1}" for j in range(matrix.shape[1])
        ))
        if len(self.periods) != matrix.shape[0]:
            raise LengthMismatch(
                f"{len(self.periods)} period labels for {matrix.shape[0]} rows"
            )
        if len(self.assets) != matrix.shape[1]:
            raise LengthMismatch(
                f"{len(self.assets)} asset names for {matrix.shape[1]} columns"
            )

    @property
    def n_periods(self) -> int:
        return self.returns.shape[0]

    @property
    def n_assets(self) -> int:
        return self.returns.shape[1]


@dataclass(frozen=True)
class ReturnFactors:
    """The three per-asset return factors, each a rate per period."""

    mean: float
    tendency: float
    forecast: float

    def __post_init__(self):
        for name in ("mean", "tendency", "forecast"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"factor {name} must be finite")


def arithmetic_mean(history: ReturnHistory, asset: int) -> float:
    """Mean return of one asset over the full history."""
    return float(np.mean(history.returns[:, asset]))


def tendency_factor(history: ReturnHistory, asset: int, window: int) -> float:
    """Mean return of one asset over its last ``window`` periods."""
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    if window > history.n_periods:
        raise WindowTooLarge(
            f"window {window} exceeds {history.n_periods} observed periods"
        )
    return float(np.mean(history.returns[-window:, asset]))


def return_interval(factors: ReturnFactors) -> Interval:
    """Interval spanning the three factors; a point when they agree."""
    values = (factors.mean, factors.tendency, factors.forecast)
    return Interval(min(values), max(values))


def estimate_universe(
    history: ReturnHistory,
    forecasts,
    risk_free_rate: float,
    window: int = DEFAULT_RECENT_WINDOW,
) -> "AssetUniverse":
    """Build the asset universe: one return interval per risky asset
    plus the risk-free rate.

    ``forecasts=None`` substitutes each asset's full-history mean, so
    the interval spans only the long-run versus recent tension.
    """
    from .model import AssetUniverse

    if forecasts is None:
        forecasts = [arithmetic_mean(history, j) for j in range(history.n_assets)]
    forecast_arr = check_vector("forecasts", forecasts, history.n_assets)
    intervals = []
    for j in range(history.n_assets):
        factors = ReturnFactors(
            mean=arithmetic_mean(history, j),
            tendency=tendency_factor(history, j, window),
            forecast=float(forecast_arr[j]),
        )
        intervals.append(return_interval(factors))
    return AssetUniverse(
        intervals=tuple(intervals),
        risk_free_rate=float(risk_free_rate),
        history=history,
    )
