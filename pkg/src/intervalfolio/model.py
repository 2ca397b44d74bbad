"""Portfolio selection model on interval-valued returns.

A universe of n risky assets (interval expected returns, shared return
history) plus one risk-free asset is rebalanced from initial holdings
under V-shaped proportional transaction costs.  Risk is the per-period
shortfall of realized returns below the portfolio's expected band,
averaged over history, itself an interval.  A candidate allocation is
acceptable when the risk interval beats an investor-supplied tolerance
interval to a required satisfaction grade ``alpha``; among acceptable
allocations the model maximizes a blend of the net return interval's
endpoints weighted by a pessimism parameter ``lam``.

The whole problem reduces exactly to one linear program per
(alpha, lam) pair; ``build_program`` emits it and ``solve_portfolio``
wraps the solve with diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadParameter, InfeasibleProblem, LengthMismatch, UnboundedProblem
from .estimation import ReturnHistory
from .intervals import Interval, satisfaction_index
from .simplex import (
    DEFAULT_FEAS_TOL,
    DEFAULT_OPT_TOL,
    LPStatus,
    StandardLP,
    solve_lp,
)
from .validation import broadcast_per_asset

_BUDGET_TOL = 1e-9


@dataclass(frozen=True)
class AssetUniverse:
    """n risky assets with interval expected returns and their common
    return history, plus one risk-free asset paying a known rate."""

    intervals: tuple[Interval, ...]
    risk_free_rate: float
    history: ReturnHistory

    def __post_init__(self):
        if not self.intervals:
            raise BadParameter("universe needs at least one risky asset")
        if len(self.intervals) != self.history.n_assets:
            raise LengthMismatch(
                f"{len(self.intervals)} return intervals for "
                f"{self.history.n_assets} assets in history"
            )
        if not np.isfinite(self.risk_free_rate):
            raise BadParameter("risk_free_rate must be finite")

    @property
    def n_risky(self) -> int:
        return len(self.intervals)

    @property
    def lower_returns(self) -> np.ndarray:
        return np.array([iv.lower for iv in self.intervals])

    @property
    def upper_returns(self) -> np.ndarray:
        return np.array([iv.upper for iv in self.intervals])


@dataclass(frozen=True)
class PortfolioProblem:
    """Universe plus investor data: per-asset transaction cost rates,
    initial holdings, allocation caps, and the risk tolerance interval.

    Vectors have length n_risky + 1; the last slot is the risk-free
    asset.  Holdings must sum to one, caps must leave the budget
    reachable, and the tolerance interval must be nonnegative.
    """

    universe: AssetUniverse
    transaction_rates: np.ndarray
    initial_holdings: np.ndarray
    upper_bounds: np.ndarray
    risk_tolerance: Interval

    def __post_init__(self):
        n_all = self.universe.n_risky + 1
        object.__setattr__(
            self,
            "transaction_rates",
            broadcast_per_asset("transaction_rates", self.transaction_rates, n_all),
        )
        object.__setattr__(
            self,
            "initial_holdings",
            broadcast_per_asset("initial_holdings", self.initial_holdings, n_all),
        )
        object.__setattr__(
            self,
            "upper_bounds",
            broadcast_per_asset("upper_bounds", self.upper_bounds, n_all),
        )
        if np.any(self.transaction_rates < 0):
            raise BadParameter("transaction rates must be nonnegative")
        if np.any(self.initial_holdings < 0):
            raise BadParameter("initial holdings must be nonnegative")
        if abs(float(np.sum(self.initial_holdings)) - 1.0) > _BUDGET_TOL:
            raise BadParameter(
                f"initial holdings sum to {float(np.sum(self.initial_holdings)):.12g}, expected 1"
            )
        if np.any(self.upper_bounds <= 0) or np.any(self.upper_bounds > 1):
            raise BadParameter("upper bounds must lie in (0, 1]")
        if float(np.sum(self.upper_bounds)) < 1.0 - _BUDGET_TOL:
            raise BadParameter("upper bounds sum to less than 1, budget unreachable")
        if self.risk_tolerance.lower < 0:
            raise BadParameter("risk tolerance must be nonnegative")

    @property
    def n_risky(self) -> int:
        return self.universe.n_risky

    @property
    def n_assets(self) -> int:
        return self.universe.n_risky + 1


@dataclass(frozen=True)
class VariableLayout:
    """Column map of the generated program.

    allocations  n_risky + 1 portfolio weights (risk-free last)
    cost_bound   single variable bounding total transaction cost
    buys         positive part of each allocation shift
    sells        negative part of each allocation shift
    lower_devs   per-period shortfall below the band's lower edge
    upper_devs   per-period shortfall below the band's upper edge
    """

    n_risky: int
    n_periods: int

    @property
    def allocations(self) -> slice:
        return slice(0, self.n_risky + 1)

    @property
    def cost_bound(self) -> int:
        return self.n_risky + 1

    @property
    def buys(self) -> slice:
        start = self.n_risky + 2
        return slice(start, start + self.n_risky + 1)

    @property
    def sells(self) -> slice:
        start = self.n_risky + 2 + (self.n_risky + 1)
        return slice(start, start + self.n_risky + 1)

    @property
    def lower_devs(self) -> slice:
        start = self.n_risky + 2 + 2 * (self.n_risky + 1)
        return slice(start, start + self.n_periods)

    @property
    def upper_devs(self) -> slice:
        start = self.n_risky + 2 + 2 * (self.n_risky + 1) + self.n_periods
        return slice(start, start + self.n_periods)

    @property
    def total(self) -> int:
        return self.n_risky + 2 + 2 * (self.n_risky + 1) + 2 * self.n_periods


def transaction_cost(allocation, problem: PortfolioProblem) -> float:
    """Total proportional cost of moving from initial holdings to
    ``allocation``: sum of rate * |shift| over all assets."""
    x = np.asarray(allocation, dtype=float)
    return float(np.sum(problem.transaction_rates * np.abs(x - problem.initial_holdings)))


def gross_return_interval(allocation, universe: AssetUniverse) -> Interval:
    """Expected portfolio return before costs; weights are nonnegative
    so the endpoints combine independently."""
    x = np.asarray(allocation, dtype=float)
    risky, free = x[:-1], x[-1]
    return Interval(
        float(risky @ universe.lower_returns + free * universe.risk_free_rate),
        float(risky @ universe.upper_returns + free * universe.risk_free_rate),
    )


def net_return_interval(allocation, problem: PortfolioProblem) -> Interval:
    return gross_return_interval(allocation, problem.universe) + (
        -transaction_cost(allocation, problem)
    )


def deviation_interval(allocation, universe: AssetUniverse, period: int) -> Interval:
    """Shortfall of period ``period``'s realized risky returns below the
    expected band, as an interval.  The risk-free asset never deviates
    and is excluded."""
    x = np.asarray(allocation, dtype=float)[:-1]
    realized = universe.history.returns[period]
    low = float((universe.lower_returns - realized) @ x)
    high = float((universe.upper_returns - realized) @ x)
    return Interval(max(low, 0.0), max(high, 0.0))


def risk_interval(allocation, universe: AssetUniverse) -> Interval:
    """Average shortfall interval over all history periods."""
    T = universe.history.n_periods
    lo = 0.0
    hi = 0.0
    for t in range(T):
        dev = deviation_interval(allocation, universe, t)
        lo += dev.lower
        hi += dev.upper
    return Interval(lo / T, hi / T)


def risk_constraint_holds(
    allocation, problem: PortfolioProblem, alpha: float, tol: float = 0.0
) -> bool:
    """Whether the allocation's risk beats the tolerance at grade
    ``alpha``, in the linearized form the program enforces:

        (1 - alpha) * mean lower shortfall + alpha * mean upper shortfall
            <= (1 - alpha) * tolerance upper + alpha * tolerance lower

    For alpha > 0 this is exactly "satisfaction index of (risk <=
    tolerance) at least alpha"; at alpha = 0 the linearized form is the
    sharper of the two (the index condition is vacuous there).
    """
    if alpha < 0:
        raise BadParameter(f"alpha must be nonnegative, got {alpha}")
    risk = risk_interval(allocation, problem.universe)
    lhs = (1.0 - alpha) * risk.lower + alpha * risk.upper
    rhs = (1.0 - alpha) * problem.risk_tolerance.upper + alpha * problem.risk_tolerance.lower
    return lhs <= rhs + tol


def build_program(problem: PortfolioProblem, alpha: float, lam: float) -> StandardLP:
    """Emit the linear program whose optimum solves the selection
    problem at pessimism ``lam`` and satisfaction grade ``alpha``.

    Columns follow VariableLayout.  Absolute shifts are split into
    buys/sells; per-period shortfalls get one variable per band edge,
    forced above the shortfall expression by a <= row and above zero by
    their bound, so at the optimum they equal the positive part.
    """
    if not 0.0 <= lam <= 1.0:
        raise BadParameter(f"lam must lie in [0, 1], got {lam}")
    if alpha < 0:
        raise BadParameter(f"alpha must be nonnegative, got {alpha}")

    uni = problem.universe
    n = uni.n_risky
    T = uni.history.n_periods
    layout = VariableLayout(n, T)
    total = layout.total
    alloc = layout.allocations
    returns = uni.history.returns
    r_low = uni.lower_returns
    r_high = uni.upper_returns

    c = np.zeros(total)
    c[:n] = lam * r_low + (1.0 - lam) * r_high
    c[n] = uni.risk_free_rate
    c[layout.cost_bound] = -1.0

    # one balance row per asset ties the shift split to the allocation
    eq = np.zeros((n + 2, total))
    eq_rhs = np.zeros(n + 2)
    for i in range(n + 1):
        eq[i, alloc.start + i] = -1.0
        eq[i, layout.buys.start + i] = 1.0
        eq[i, layout.sells.start + i] = -1.0
        eq_rhs[i] = -problem.initial_holdings[i]
    eq[n + 1, alloc] = 1.0
    eq_rhs[n + 1] = 1.0

    le = np.zeros((2 + 2 * T, total))
    le_rhs = np.zeros(2 + 2 * T)
    # blended mean shortfall within tolerance
    le[0, layout.lower_devs] = (1.0 - alpha) / T
    le[0, layout.upper_devs] = alpha / T
    le_rhs[0] = (1.0 - alpha) * problem.risk_tolerance.upper + alpha * problem.risk_tolerance.lower
    # total cost within its bounding variable
    le[1, layout.buys] = problem.transaction_rates
    le[1, layout.sells] = problem.transaction_rates
    le[1, layout.cost_bound] = -1.0
    for t in range(T):
        le[2 + t, :n] = r_low - returns[t]
        le[2 + t, layout.lower_devs.start + t] = -1.0
        le[2 + T + t, :n] = r_high - returns[t]
        le[2 + T + t, layout.upper_devs.start + t] = -1.0

    lower = np.zeros(total)
    upper = np.full(total, np.inf)
    upper[alloc] = problem.upper_bounds
    return StandardLP(
        objective=c,
        eq_coefficients=eq,
        eq_rhs=eq_rhs,
        le_coefficients=le,
        le_rhs=le_rhs,
        var_lower=lower,
        var_upper=upper,
        layout=layout,
    )


@dataclass(frozen=True)
class PortfolioSolution:
    """Optimal allocation at one (alpha, lam) pair, with the quantities
    an investor reads off: net return band, risk band, achieved
    satisfaction grade, and the cost paid to rebalance."""

    allocation: np.ndarray
    objective_value: float
    net_return: Interval
    risk: Interval
    satisfaction: float
    cost: float
    alpha: float
    lam: float
    lp_variables: np.ndarray
    layout: VariableLayout

    @property
    def risky_allocation(self) -> np.ndarray:
        return self.allocation[:-1]

    @property
    def risk_free_allocation(self) -> float:
        return float(self.allocation[-1])


def solve_portfolio(
    problem: PortfolioProblem,
    alpha: float,
    lam: float,
    feas_tol: float = DEFAULT_FEAS_TOL,
    opt_tol: float = DEFAULT_OPT_TOL,
) -> PortfolioSolution:
    """Build and solve the program, then report investor-facing
    quantities recomputed from the allocation itself.

    Raises InfeasibleProblem with a diagnosis of whether the risk
    tolerance or the holdings/caps are to blame; an unbounded program
    would be a construction bug and raises UnboundedProblem.
    """
    lp = build_program(problem, alpha, lam)
    result = solve_lp(lp, feas_tol=feas_tol, opt_tol=opt_tol)
    if result.status is LPStatus.INFEASIBLE:
        raise InfeasibleProblem(*_diagnose_infeasibility(problem, alpha, lam, feas_tol, opt_tol))
    if result.status is LPStatus.UNBOUNDED:
        raise UnboundedProblem(
            "selection program is unbounded; allocation caps failed to bind"
        )

    layout: VariableLayout = lp.layout
    x = result.x[layout.allocations].copy()
    uni = problem.universe
    net = net_return_interval(x, problem)
    risk = risk_interval(x, uni)
    return PortfolioSolution(
        allocation=x,
        objective_value=float(result.objective),
        net_return=net,
        risk=risk,
        satisfaction=satisfaction_index(risk, problem.risk_tolerance),
        cost=transaction_cost(x, problem),
        alpha=alpha,
        lam=lam,
        lp_variables=result.x,
        layout=layout,
    )


def _diagnose_infeasibility(problem, alpha, lam, feas_tol, opt_tol):
    """Re-solve without the risk row to tell a too-tight tolerance apart
    from contradictory holdings/caps."""
    lp = build_program(problem, alpha, lam)
    relaxed = StandardLP(
        objective=lp.objective,
        eq_coefficients=lp.eq_coefficients,
        eq_rhs=lp.eq_rhs,
        le_coefficients=lp.le_coefficients[1:],
        le_rhs=lp.le_rhs[1:],
        var_lower=lp.var_lower,
        var_upper=lp.var_upper,
        layout=lp.layout,
    )
    result = solve_lp(relaxed, feas_tol=feas_tol, opt_tol=opt_tol)
    if result.status is LPStatus.INFEASIBLE:
        return (
            "no allocation satisfies the holdings, budget, and cap constraints",
            "bounds",
        )
    return (
        f"risk tolerance {problem.risk_tolerance} is unreachable at grade alpha={alpha:g}",
        "risk",
    )
