"""File formats: return-history tables, problem configuration, and the
structured result documents the CLI and HTTP service emit.

History files are comma-separated text with a mandatory header row; the
first column is a period label, the remaining columns are per-asset
simple returns as decimals.  Configuration is a single JSON object.
Result documents are JSON with every interval rendered as an explicit
``{"lower": ..., "upper": ...}`` object; serialization is deterministic
so identical inputs produce byte-identical output.
"""

from __future__ import annotations

import csv
import io as _io
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadParameter,
    NonFiniteValue,
    ParseError,
    SchemaError,
    WindowTooLarge,
)
from .estimation import (
    DEFAULT_RECENT_WINDOW,
    ReturnHistory,
    arithmetic_mean,
    return_interval,
    tendency_factor,
)
from .intervals import Interval
from .model import AssetUniverse, PortfolioProblem
from .sweep import SweepTable

_CONFIG_FIELDS = {"risk_free_rate", "forecasts", "risk_tolerance", "m", "k", "x0", "u"}


def parse_history_text(text: str, source: str = "<string>") -> ReturnHistory:
    """Parse history CSV from a string.  Errors carry 1-based line and
    column coordinates."""
    reader = csv.reader(_io.StringIO(text))
    try:
        rows = [row for row in reader]
    except csv.Error as exc:
        raise ParseError(f"{source}: {exc}") from exc
    rows = [row for row in rows if any(cell.strip() for cell in row)]
    if not rows:
        raise ParseError(f"{source}: empty history file")

    header = [cell.strip() for cell in rows[0]]
    if len(header) < 2:
        raise ParseError(f"{source}: header needs a period column and at least one asset", row=1)
    assets = header[1:]
    seen = set()
    for pos, name in enumerate(assets, start=2):
        if not name:
            raise ParseError(f"{source}: empty asset name in header", row=1, column=pos)
        if name in seen:
            raise ParseError(f"{source}: duplicate asset name {name!r}", row=1, column=pos)
        seen.add(name)

    n = len(assets)
    periods: list[str] = []
    values: list[list[float]] = []
    for line_no, row in enumerate(rows[1:], start=2):
        cells = [cell.strip() for cell in row]
        if len(cells) != n + 1:
            raise ParseError(
                f"{source}: expected {n + 1} fields, found {len(cells)}", row=line_no
            )
        periods.append(cells[0])
        parsed_row = []
        for col, cell in enumerate(cells[1:], start=2):
            try:
                value = float(cell)
            except ValueError:
                raise ParseError(
                    f"{source}: {cell!r} is not a number", row=line_no, column=col
                ) from None
            if not math.isfinite(value):
                raise NonFiniteValue(
                    f"{source}: non-finite return {cell!r}", row=line_no, column=col
                )
            parsed_row.append(value)
        values.append(parsed_row)

    if not values:
        raise ParseError(f"{source}: no data rows", row=1)
    return ReturnHistory(
        returns=np.array(values), periods=tuple(periods), assets=tuple(assets)
    )


def parse_history(path) -> ReturnHistory:
    with open(path, "r", encoding="utf-8", newline="") as handle:
        return parse_history_text(handle.read(), source=str(path))


def serialize_history(history: ReturnHistory) -> str:
    out = _io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(("period",) + history.assets)
    for label, row in zip(history.periods, history.returns):
        writer.writerow([label] + [repr(float(v)) for v in row])
    return out.getvalue()


@dataclass(frozen=True)
class ProblemConfig:
    """Validated configuration.  Optional per-asset vectors stay None
    when omitted and get their documented defaults at assembly time:
    zero transaction rates, all-risk-free initial holdings, caps of 1.
    """

    risk_free_rate: float
    forecasts: tuple[float, ...]
    risk_tolerance: Interval
    window: int = DEFAULT_RECENT_WINDOW
    transaction_rates: tuple[float, ...] | None = None
    initial_holdings: tuple[float, ...] | None = None
    upper_bounds: tuple[float, ...] | None = None


def _number(data: dict, field: str) -> float:
    value = data[field]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(field, "must be a number")
    if not math.isfinite(float(value)):
        raise SchemaError(field, "must be finite")
    return float(value)


def _number_list(data: dict, field: str) -> tuple[float, ...]:
    value = data[field]
    if not isinstance(value, (list, tuple)) or not value:
        raise SchemaError(field, "must be a non-empty list of numbers")
    out = []
    for item in value:
        if isinstance(item, bool) or not isinstance(item, (int, float)):
            raise SchemaError(field, "must contain numbers only")
        if not math.isfinite(float(item)):
            raise SchemaError(field, "must contain finite numbers only")
        out.append(float(item))
    return tuple(out)


def parse_config_data(data) -> ProblemConfig:
    """Validate an already-deserialized configuration object."""
    if not isinstance(data, dict):
        raise SchemaError("config", "must be an object of key/value pairs")
    for key in data:
        if key not in _CONFIG_FIELDS:
            raise SchemaError(key, "unknown field")
    for required in ("risk_free_rate", "forecasts", "risk_tolerance"):
        if required not in data:
            raise SchemaError(required, "is required")

    risk_free_rate = _number(data, "risk_free_rate")
    forecasts = _number_list(data, "forecasts")

    tolerance_raw = _number_list(data, "risk_tolerance")
    if len(tolerance_raw) != 2:
        raise SchemaError("risk_tolerance", "must be a two-element list [lower, upper]")
    lo, hi = tolerance_raw
    if lo > hi:
        raise SchemaError("risk_tolerance", f"lower {lo:g} exceeds upper {hi:g}")
    if lo < 0:
        raise SchemaError("risk_tolerance", "must be nonnegative")

    window = DEFAULT_RECENT_WINDOW
    if "m" in data:
        value = data["m"]
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            raise SchemaError("m", "must be a positive integer")
        window = value

    optional: dict[str, tuple[float, ...] | None] = {}
    for field in ("k", "x0", "u"):
        optional[field] = _number_list(data, field) if field in data else None
    if optional["k"] is not None and any(v < 0 for v in optional["k"]):
        raise SchemaError("k", "transaction rates must be nonnegative")

    return ProblemConfig(
        risk_free_rate=risk_free_rate,
        forecasts=forecasts,
        risk_tolerance=Interval(lo, hi),
        window=window,
        transaction_rates=optional["k"],
        initial_holdings=optional["x0"],
        upper_bounds=optional["u"],
    )


def parse_config_text(text: str, source: str = "<string>") -> ProblemConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: {exc}", row=exc.lineno, column=exc.colno) from exc
    return parse_config_data(data)


def parse_config(path) -> ProblemConfig:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_config_text(handle.read(), source=str(path))


def serialize_config(config: ProblemConfig) -> str:
    data: dict = {
        "risk_free_rate": config.risk_free_rate,
        "forecasts": list(config.forecasts),
        "risk_tolerance": [config.risk_tolerance.lower, config.risk_tolerance.upper],
        "m": config.window,
    }
    if config.transaction_rates is not None:
        data["k"] = list(config.transaction_rates)
    if config.initial_holdings is not None:
        data["x0"] = list(config.initial_holdings)
    if config.upper_bounds is not None:
        data["u"] = list(config.upper_bounds)
    return json.dumps(data, indent=2) + "\n"


def assemble_problem(history: ReturnHistory, config: ProblemConfig) -> PortfolioProblem:
    """Bind a configuration to a history: estimate the return intervals
    and materialize defaults for the omitted per-asset vectors."""
    n = history.n_assets
    if len(config.forecasts) != n:
        raise SchemaError(
            "forecasts", f"has {len(config.forecasts)} entries for {n} assets"
        )
    if config.window > history.n_periods:
        raise SchemaError(
            "m", f"window {config.window} exceeds the {history.n_periods} periods on file"
        )

    intervals = []
    for asset in range(n):
        factors = _asset_factors(history, config, asset)
        intervals.append(return_interval(factors))
    universe = AssetUniverse(
        intervals=tuple(intervals),
        risk_free_rate=config.risk_free_rate,
        history=history,
    )

    def materialize(field: str, stored, default):
        if stored is None:
            return default
        if len(stored) != n + 1:
            raise SchemaError(field, f"has {len(stored)} entries, expected {n + 1}")
        return np.array(stored)

    rates = materialize("k", config.transaction_rates, np.zeros(n + 1))
    all_risk_free = np.zeros(n + 1)
    all_risk_free[-1] = 1.0
    holdings = materialize("x0", config.initial_holdings, all_risk_free)
    caps = materialize("u", config.upper_bounds, np.ones(n + 1))
    try:
        return PortfolioProblem(
            universe=universe,
            transaction_rates=rates,
            initial_holdings=holdings,
            upper_bounds=caps,
            risk_tolerance=config.risk_tolerance,
        )
    except BadParameter as exc:
        field = "x0" if "holdings" in str(exc) else "u" if "bounds" in str(exc) else "config"
        raise SchemaError(field, str(exc)) from exc


def _asset_factors(history: ReturnHistory, config: ProblemConfig, asset: int):
    from .estimation import ReturnFactors

    try:
        return ReturnFactors(
            mean=arithmetic_mean(history, asset),
            tendency=tendency_factor(history, asset, config.window),
            forecast=config.forecasts[asset],
        )
    except WindowTooLarge as exc:
        raise SchemaError("m", str(exc)) from exc


def interval_object(interval: Interval | None) -> dict | None:
    if interval is None:
        return None
    return {"lower": interval.lower, "upper": interval.upper}


def estimate_document(history: ReturnHistory, config: ProblemConfig) -> dict:
    """Per-asset return factors and the resulting expected-return
    intervals."""
    assets = []
    for idx, name in enumerate(history.assets):
        factors = _asset_factors(history, config, idx)
        assets.append(
            {
                "asset": name,
                "mean": factors.mean,
                "recent_mean": factors.tendency,
                "forecast": factors.forecast,
                "interval": interval_object(return_interval(factors)),
            }
        )
    return {
        "n_assets": history.n_assets,
        "n_periods": history.n_periods,
        "window": config.window,
        "risk_free_rate": config.risk_free_rate,
        "assets": assets,
    }


def solution_document(solution, assets: tuple[str, ...]) -> dict:
    """Investor-facing result of one solve; allocation order is the
    history's asset order plus the risk-free asset last."""
    return {
        "alpha": solution.alpha,
        "lambda": solution.lam,
        "status": "optimal",
        "objective_value": solution.objective_value,
        "assets": list(assets) + ["risk_free"],
        "allocation": [float(v) for v in solution.allocation],
        "net_return": interval_object(solution.net_return),
        "risk": interval_object(solution.risk),
        "satisfaction": solution.satisfaction,
        "transaction_cost": solution.cost,
    }


def sweep_document(table: SweepTable, assets: tuple[str, ...]) -> dict:
    rows = []
    for row in table.rows:
        rows.append(
            {
                "alpha": row.alpha,
                "lambda": row.lam,
                "status": row.status,
                "objective_value": row.objective_value,
                "allocation": list(row.allocation) if row.allocation is not None else None,
                "return_interval": interval_object(row.return_interval),
                "risk_interval": interval_object(row.risk_interval),
                "satisfaction": row.satisfaction,
                "transaction_cost": row.cost,
                "infeasible_reason": row.infeasible_reason,
            }
        )
    return {
        "fingerprint": table.fingerprint,
        "assets": list(assets) + ["risk_free"],
        "alphas": list(table.alphas),
        "lambdas": list(table.lambdas),
        "rows": rows,
    }


def render_document(document: dict) -> str:
    """Deterministic JSON rendering: fixed key order, trailing newline."""
    return json.dumps(document, indent=2, allow_nan=False) + "\n"


__all__ = [
    "ProblemConfig",
    "assemble_problem",
    "estimate_document",
    "interval_object",
    "parse_config",
    "parse_config_data",
    "parse_config_text",
    "parse_history",
    "parse_history_text",
    "render_document",
    "serialize_config",
    "serialize_history",
    "solution_document",
    "sweep_document",
]
