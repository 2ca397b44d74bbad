"""Shared fixtures: a six-stock reference universe, random instance
builders, and brute-force oracles used across test modules."""

from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from intervalfolio import (
    AssetUniverse,
    Interval,
    PortfolioProblem,
    ReturnHistory,
    StandardLP,
)

settings.register_profile(
    "package",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("package")

# Six-stock reference universe: per-asset expected-return interval
# endpoints the synthetic history below must reproduce exactly.
STOCK_LOWER = (0.0838, 0.0562, 0.0220, 0.0600, 0.0450, 0.0488)
STOCK_UPPER = (0.1000, 0.0898, 0.0513, 0.0760, 0.1040, 0.0780)
RISK_FREE_RATE = 0.0014
RISK_TOLERANCE = (0.015, 0.040)


def six_stock_history_matrix() -> np.ndarray:
    """8-period, 6-asset history engineered so that, with window 5, the
    full mean equals the target lower endpoint and the recent mean sits
    at the interval midpoint: last five observations are the midpoint M,
    the first three are (8L - 5M)/3."""
    rows = 8
    matrix = np.empty((rows, len(STOCK_LOWER)))
    for j, (lo, hi) in enumerate(zip(STOCK_LOWER, STOCK_UPPER)):
        mid = (lo + hi) / 2.0
        head = (8.0 * lo - 5.0 * mid) / 3.0
        matrix[:3, j] = head
        matrix[3:, j] = mid
    return matrix


def six_stock_history() -> ReturnHistory:
    names = tuple(f"S{j + 1}" for j in range(6))
    return ReturnHistory(returns=six_stock_history_matrix(), assets=names)


def six_stock_config() -> dict:
    return {
        "risk_free_rate": RISK_FREE_RATE,
        "forecasts": list(STOCK_UPPER),
        "risk_tolerance": list(RISK_TOLERANCE),
        "m": 5,
        "k": [0.003] * 6 + [0.0],
        "x0": [0.0] * 6 + [1.0],
        "u": [1.0] * 7,
    }


def six_stock_history_csv() -> str:
    history = six_stock_history()
    lines = ["period," + ",".join(history.assets)]
    for label, row in zip(history.periods, history.returns):
        lines.append(label + "," + ",".join(repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"


@pytest.fixture
def stock_history() -> ReturnHistory:
    return six_stock_history()


@pytest.fixture
def stock_problem() -> PortfolioProblem:
    from intervalfolio.io import assemble_problem, parse_config_data

    return assemble_problem(six_stock_history(), parse_config_data(six_stock_config()))


def random_problem(
    rng: np.random.Generator,
    n: int,
    T: int,
    k_low: float = 0.0005,
    k_high: float = 0.01,
    tolerance_scale: float = 1.0,
) -> PortfolioProblem:
    """Random feasible instance: spread-out history, intervals from the
    history itself plus a jittered forecast, generous caps with the
    risk-free cap at 1 so the all-risk-free portfolio stays feasible
    for every alpha in [0, 1]."""
    history_matrix = rng.normal(0.01, 0.03, size=(T, n))
    history = ReturnHistory(returns=history_matrix)
    means = history_matrix.mean(axis=0)
    window = max(1, T - 1)
    recent = history_matrix[-window:].mean(axis=0)
    forecasts = means + rng.uniform(-0.02, 0.02, size=n)
    intervals = tuple(
        Interval(min(m, r, f), max(m, r, f))
        for m, r, f in zip(means, recent, forecasts)
    )
    universe = AssetUniverse(
        intervals=intervals,
        risk_free_rate=rng.uniform(0.0, 0.004),
        history=history,
    )
    rates = rng.uniform(k_low, k_high, size=n + 1)
    holdings = rng.dirichlet(np.ones(n + 1))
    caps = np.concatenate([rng.uniform(0.4, 1.0, size=n), [1.0]])
    lo = rng.uniform(0.0, 0.01) * tolerance_scale
    hi = lo + rng.uniform(0.005, 0.03) * tolerance_scale
    return PortfolioProblem(
        universe=universe,
        transaction_rates=rates,
        initial_holdings=holdings,
        upper_bounds=caps,
        risk_tolerance=Interval(lo, hi),
    )


def simplex_grid(n_risky: int, step: float = 0.05):
    """Every allocation on the (n_risky + 1)-asset budget simplex whose
    entries are multiples of ``step``; rows sum to 1 exactly."""
    ticks = round(1.0 / step)
    points = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            points.append(prefix + [remaining])
            return
        for i in range(remaining + 1):
            rec(prefix + [i], remaining - i, slots - 1)

    rec([], ticks, n_risky + 1)
    return np.array(points, dtype=float) * step


def grid_best(problem: PortfolioProblem, alpha: float, lam: float, step: float) -> float:
    """Exhaustive-search oracle: best blended objective over stepped
    budget-simplex allocations satisfying caps and the risk row."""
    uni = problem.universe
    grid = simplex_grid(uni.n_risky, step)
    grid = grid[np.all(grid <= problem.upper_bounds + 1e-12, axis=1)]
    risky = grid[:, :-1]
    realized = risky @ uni.history.returns.T
    low_dev = np.maximum((risky @ uni.lower_returns)[:, None] - realized, 0.0)
    up_dev = np.maximum((risky @ uni.upper_returns)[:, None] - realized, 0.0)
    lhs = (1 - alpha) * low_dev.mean(axis=1) + alpha * up_dev.mean(axis=1)
    rhs = (1 - alpha) * problem.risk_tolerance.upper + alpha * problem.risk_tolerance.lower
    feasible = grid[lhs <= rhs + 1e-12]
    if feasible.size == 0:
        return -np.inf
    gross_low = feasible[:, :-1] @ uni.lower_returns + feasible[:, -1] * uni.risk_free_rate
    gross_up = feasible[:, :-1] @ uni.upper_returns + feasible[:, -1] * uni.risk_free_rate
    costs = np.abs(feasible - problem.initial_holdings) @ problem.transaction_rates
    objective = lam * (gross_low - costs) + (1 - lam) * (gross_up - costs)
    return float(np.max(objective))


def enumerate_vertices_best(lp: StandardLP) -> float:
    """Oracle: best objective over all basic solutions of the
    slack-extended system that respect every bound.  Requires all
    variable bounds finite.  Per basis subset, every nonbasic
    lower/upper pattern is solved in one batched call."""
    n = lp.n_variables
    m_le = lp.le_rhs.shape[0]
    A = np.vstack(
        [
            np.hstack([lp.eq_coefficients, np.zeros((lp.eq_rhs.shape[0], m_le))]),
            np.hstack([lp.le_coefficients, np.eye(m_le)]),
        ]
    )
    b = np.concatenate([lp.eq_rhs, lp.le_rhs])
    # slack upper bounds: any finite cover works for enumeration; use a
    # bound implied by the row ranges so vertices stay finite
    slack_cap = np.abs(b).sum() + np.abs(A).sum() * (
        np.abs(lp.var_lower).max() + np.abs(lp.var_upper).max() + 1.0
    )
    lower = np.concatenate([lp.var_lower, np.zeros(m_le)])
    upper = np.concatenate([lp.var_upper, np.full(m_le, slack_cap)])
    c = np.concatenate([lp.objective, np.zeros(m_le)])
    N = n + m_le
    m = A.shape[0]
    best = -np.inf
    tol = 1e-9
    for basis in itertools.combinations(range(N), m):
        B = A[:, list(basis)]
        if abs(np.linalg.det(B)) < 1e-10:
            continue
        nonbasic = [j for j in range(N) if j not in basis]
        k = len(nonbasic)
        # columns of X_N enumerate every lower/upper assignment
        bits = (np.arange(1 << k)[None, :] >> np.arange(k)[:, None]) & 1
        x_nb = np.where(bits == 1, upper[nonbasic][:, None], lower[nonbasic][:, None])
        rhs = b[:, None] - A[:, nonbasic] @ x_nb
        x_b = np.linalg.solve(B, rhs)
        ok_b = np.all(
            (x_b >= lower[list(basis)][:, None] - tol)
            & (x_b <= upper[list(basis)][:, None] + tol),
            axis=0,
        )
        if not np.any(ok_b):
            continue
        values = c[list(basis)] @ x_b[:, ok_b] + c[nonbasic] @ x_nb[:, ok_b]
        best = max(best, float(values.max()))
    return best


def random_bounded_lp(rng: np.random.Generator, max_vars: int = 5) -> StandardLP:
    """Random LP with finite boxes and a guaranteed interior point, so
    it is always feasible and bounded."""
    n = int(rng.integers(2, max_vars + 1))
    m_eq = int(rng.integers(0, 2))
    m_le = int(rng.integers(1, 3))
    lower = rng.uniform(-2.0, 0.0, size=n)
    upper = lower + rng.uniform(0.5, 3.0, size=n)
    z = rng.uniform(lower, upper)
    A_eq = rng.uniform(-2, 2, size=(m_eq, n))
    A_le = rng.uniform(-2, 2, size=(m_le, n))
    return StandardLP(
        objective=rng.uniform(-2, 2, size=n),
        eq_coefficients=A_eq,
        eq_rhs=A_eq @ z,
        le_coefficients=A_le,
        le_rhs=A_le @ z + rng.uniform(0.0, 1.0, size=m_le),
        var_lower=lower,
        var_upper=upper,
    )
