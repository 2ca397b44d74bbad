"""Parameter sweeps over the satisfaction grade and pessimism weight.

A sweep solves the selection problem on a grid of (alpha, lam) pairs
and keeps every cell, including infeasible ones, so downstream
consumers can chart the efficient frontier and audit the expected
structure: the optimal value never increases in either parameter, and
tightening alpha can only shrink the feasible set.  ``bracket_values``
extracts the two corner cells that bound every optimal value on an
alpha range.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .errors import BadParameter, InfeasibleProblem, MissingCorner
from .intervals import Interval
from .model import PortfolioProblem, PortfolioSolution, solve_portfolio

DEFAULT_ALPHAS = (0.25, 0.5, 0.75, 1.0)
DEFAULT_LAMBDAS = tuple(round(0.12 * i, 12) for i in range(9))

_GRID_TOL = 1e-12


OPTIMAL = "optimal"
INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class SweepRow:
    """One grid cell.  Optimal cells carry the solution quantities;
    infeasible cells carry only the diagnosis."""

    alpha: float
    lam: float
    status: str
    objective_value: float | None = None
    allocation: tuple[float, ...] | None = None
    return_interval: Interval | None = None
    risk_interval: Interval | None = None
    satisfaction: float | None = None
    cost: float | None = None
    infeasible_reason: str | None = None

    @property
    def feasible(self) -> bool:
        return self.status == OPTIMAL

    @classmethod
    def from_solution(cls, solution: PortfolioSolution) -> "SweepRow":
        return cls(
            alpha=solution.alpha,
            lam=solution.lam,
            status=OPTIMAL,
            objective_value=solution.objective_value,
            allocation=tuple(float(v) for v in solution.allocation),
            return_interval=solution.net_return,
            risk_interval=solution.risk,
            satisfaction=solution.satisfaction,
            cost=solution.cost,
        )


@dataclass(frozen=True)
class SweepTable:
    rows: tuple[SweepRow, ...]
    fingerprint: str

    def cell(self, alpha: float, lam: float) -> SweepRow:
        for row in self.rows:
            if abs(row.alpha - alpha) <= _GRID_TOL and abs(row.lam - lam) <= _GRID_TOL:
                return row
        raise KeyError(f"no cell at alpha={alpha:g}, lambda={lam:g}")

    @property
    def alphas(self) -> tuple[float, ...]:
        return tuple(sorted({row.alpha for row in self.rows}))

    @property
    def lambdas(self) -> tuple[float, ...]:
        return tuple(sorted({row.lam for row in self.rows}))


def problem_fingerprint(problem: PortfolioProblem) -> str:
    """Content hash of everything that determines the sweep's numbers,
    so a table can be matched back to its inputs."""
    uni = problem.universe
    payload = {
        "history": [[float(v) for v in row] for row in uni.history.returns],
        "returns": [[iv.lower, iv.upper] for iv in uni.intervals],
        "risk_free_rate": uni.risk_free_rate,
        "transaction_rates": [float(v) for v in problem.transaction_rates],
        "initial_holdings": [float(v) for v in problem.initial_holdings],
        "upper_bounds": [float(v) for v in problem.upper_bounds],
        "risk_tolerance": [problem.risk_tolerance.lower, problem.risk_tolerance.upper],
    }
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("ascii")).hexdigest()


def sweep(
    problem: PortfolioProblem,
    alphas=DEFAULT_ALPHAS,
    lambdas=DEFAULT_LAMBDAS,
) -> SweepTable:
    """Solve every (alpha, lam) cell; rows come back sorted by alpha
    then lam, with infeasible cells kept in place."""
    alphas = [float(a) for a in alphas]
    lambdas = [float(l) for l in lambdas]
    if not alphas or not lambdas:
        raise BadParameter("sweep grids must be non-empty")
    for a in alphas:
        if not np.isfinite(a) or a < 0:
            raise BadParameter(f"alpha values must be nonnegative, got {a}")
    for l in lambdas:
        if not np.isfinite(l) or not 0.0 <= l <= 1.0:
            raise BadParameter(f"lambda values must lie in [0, 1], got {l}")

    rows = []
    for alpha in sorted(alphas):
        for lam in sorted(lambdas):
            try:
                rows.append(SweepRow.from_solution(solve_portfolio(problem, alpha, lam)))
            except InfeasibleProblem as exc:
                rows.append(
                    SweepRow(
                        alpha=alpha,
                        lam=lam,
                        status=INFEASIBLE,
                        infeasible_reason=exc.reason,
                    )
                )
    return SweepTable(rows=tuple(rows), fingerprint=problem_fingerprint(problem))


@dataclass(frozen=True)
class MonotonicityViolation:
    axis: str  # "alpha", "lambda", or "feasibility"
    fixed_value: float
    first: float
    second: float
    increase: float

    def __str__(self) -> str:
        if self.axis == "feasibility":
            return (
                f"feasible at alpha={self.second:g} but infeasible at "
                f"alpha={self.first:g} (lam={self.fixed_value:g})"
            )
        moving = "alpha" if self.axis == "alpha" else "lambda"
        fixed = "lambda" if self.axis == "alpha" else "alpha"
        return (
            f"objective rose by {self.increase:.3e} from {moving}={self.first:g} "
            f"to {moving}={self.second:g} at {fixed}={self.fixed_value:g}"
        )


@dataclass(frozen=True)
class MonotonicityReport:
    violations: tuple[MonotonicityViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_monotonicity(table: SweepTable, tol: float = 1e-9) -> MonotonicityReport:
    """Audit the sweep against the structure the model guarantees:
    along either axis the optimal value may only fall (up to ``tol``),
    and a cell infeasible at some alpha stays infeasible at larger
    alpha.  Feasibility never depends on lam, so a mixed lam line is
    reported as a feasibility violation too."""
    violations: list[MonotonicityViolation] = []

    for lam in table.lambdas:
        line = sorted(
            (row for row in table.rows if abs(row.lam - lam) <= _GRID_TOL),
            key=lambda row: row.alpha,
        )
        for prev, cur in zip(line, line[1:]):
            if prev.feasible and cur.feasible:
                if cur.objective_value > prev.objective_value + tol:
                    violations.append(
                        MonotonicityViolation(
                            axis="alpha",
                            fixed_value=lam,
                            first=prev.alpha,
                            second=cur.alpha,
                            increase=cur.objective_value - prev.objective_value,
                        )
                    )
            elif not prev.feasible and cur.feasible:
                violations.append(
                    MonotonicityViolation(
                        axis="feasibility",
                        fixed_value=lam,
                        first=prev.alpha,
                        second=cur.alpha,
                        increase=0.0,
                    )
                )

    for alpha in table.alphas:
        line = sorted(
            (row for row in table.rows if abs(row.alpha - alpha) <= _GRID_TOL),
            key=lambda row: row.lam,
        )
        for prev, cur in zip(line, line[1:]):
            if prev.feasible and cur.feasible:
                if cur.objective_value > prev.objective_value + tol:
                    violations.append(
                        MonotonicityViolation(
                            axis="lambda",
                            fixed_value=alpha,
                            first=prev.lam,
                            second=cur.lam,
                            increase=cur.objective_value - prev.objective_value,
                        )
                    )
            elif prev.feasible != cur.feasible:
                violations.append(
                    MonotonicityViolation(
                        axis="feasibility",
                        fixed_value=alpha,
                        first=prev.lam,
                        second=cur.lam,
                        increase=0.0,
                    )
                )

    return MonotonicityReport(violations=tuple(violations))


def bracket_values(table: SweepTable, alpha_lo: float, alpha_hi: float) -> tuple[float, float]:
    """The pair (floor, ceiling) bounding every optimal value for alpha
    in [alpha_lo, alpha_hi] and lam in [0, 1]: the floor is the cell at
    (alpha_hi, lam=1), the ceiling at (alpha_lo, lam=0).  Both corner
    cells must be present and feasible."""
    if alpha_hi < alpha_lo:
        raise BadParameter(f"alpha range [{alpha_lo}, {alpha_hi}] is empty")
    try:
        floor_cell = table.cell(alpha_hi, 1.0)
    except KeyError:
        floor_cell = None
    try:
        ceiling_cell = table.cell(alpha_lo, 0.0)
    except KeyError:
        ceiling_cell = None
    if floor_cell is None or not floor_cell.feasible:
        raise MissingCorner(f"no feasible cell at alpha={alpha_hi:g}, lambda=1")
    if ceiling_cell is None or not ceiling_cell.feasible:
        raise MissingCorner(f"no feasible cell at alpha={alpha_lo:g}, lambda=0")
    return floor_cell.objective_value, ceiling_cell.objective_value
