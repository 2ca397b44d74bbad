"""Estimator-style facade over the functional core.

Both classes follow the scikit-learn contract: constructor stores
hyperparameters verbatim, ``fit`` validates inputs and computes, fitted
state lives in trailing-underscore attributes, and ``get_params`` /
``set_params`` / ``clone`` work unchanged.  ``X`` is always the return
history, one row per period and one column per risky asset.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator

from .errors import BadParameter
from .estimation import (
    DEFAULT_RECENT_WINDOW,
    ReturnHistory,
    estimate_universe,
)
from .intervals import Interval
from .model import PortfolioProblem, solve_portfolio
from .validation import broadcast_per_asset, check_returns_matrix


class IntervalReturnEstimator(BaseEstimator):
    """Estimate a per-asset expected-return interval from history.

    The interval spans the spread of three point estimates: the
    full-history mean, the mean of the last ``recent_window`` periods,
    and an external per-asset ``forecasts`` vector.  Without forecasts
    the full-history mean stands in, so the interval spans the long-run
    versus recent tension alone.

    Attributes after ``fit``: ``intervals_``, ``arithmetic_means_``,
    ``recent_means_``, ``forecasts_``, ``n_assets_``, ``n_periods_``.
    """

    def __init__(self, recent_window: int = DEFAULT_RECENT_WINDOW, forecasts=None):
        self.recent_window = recent_window
        self.forecasts = forecasts

    def fit(self, X, y=None):
        X = check_returns_matrix(X)
        history = ReturnHistory(returns=X)
        universe = estimate_universe(
            history,
            forecasts=self.forecasts,
            risk_free_rate=0.0,
            window=self.recent_window,
        )
        self.n_periods_, self.n_assets_ = X.shape
        self.intervals_ = universe.intervals
        self.arithmetic_means_ = X.mean(axis=0)
        self.recent_means_ = X[X.shape[0] - self.recent_window :].mean(axis=0)
        if self.forecasts is None:
            self.forecasts_ = self.arithmetic_means_.copy()
        else:
            self.forecasts_ = np.asarray(self.forecasts, dtype=float)
        return self

    def transform(self, X=None):
        """Fitted intervals as an (n_assets, 2) array of endpoints."""
        self._check_fitted()
        return np.array([(iv.lower, iv.upper) for iv in self.intervals_])

    def fit_transform(self, X, y=None):
        return self.fit(X).transform()

    def _check_fitted(self):
        if not hasattr(self, "intervals_"):
            raise AttributeError("estimator is not fitted; call fit first")


class IntervalPortfolioSelector(BaseEstimator):
    """Select a portfolio over the assets of ``X`` plus a risk-free slot.

    ``fit`` estimates return intervals from the history, assembles the
    selection problem, and solves it at the configured satisfaction
    grade ``alpha`` and pessimism weight ``lam``.  ``risk_tolerance``
    (a (lower, upper) pair) is the only parameter without a default;
    leaving it unset raises at fit time.

    Per-asset parameters (``transaction_rates``, ``initial_holdings``,
    ``upper_bounds``) take scalars or length n+1 vectors whose last slot
    is the risk-free asset; ``initial_holdings=None`` starts fully in
    the risk-free asset.

    Attributes after ``fit``: ``weights_`` (length n+1, risk-free
    last), ``objective_value_``, ``net_return_interval_``,
    ``risk_interval_``, ``satisfaction_``, ``transaction_cost_``,
    ``problem_``, ``solution_``.
    """

    def __init__(
        self,
        alpha: float = 1.0,
        lam: float = 0.5,
        risk_tolerance=None,
        recent_window: int = DEFAULT_RECENT_WINDOW,
        forecasts=None,
        risk_free_rate: float = 0.0,
        transaction_rates=0.0,
        initial_holdings=None,
        upper_bounds=1.0,
    ):
        self.alpha = alpha
        self.lam = lam
        self.risk_tolerance = risk_tolerance
        self.recent_window = recent_window
        self.forecasts = forecasts
        self.risk_free_rate = risk_free_rate
        self.transaction_rates = transaction_rates
        self.initial_holdings = initial_holdings
        self.upper_bounds = upper_bounds

    def fit(self, X, y=None):
        X = check_returns_matrix(X)
        if self.risk_tolerance is None:
            raise BadParameter(
                "risk_tolerance is required: pass a (lower, upper) pair of "
                "acceptable mean-shortfall levels"
            )
        tolerance = self.risk_tolerance
        if not isinstance(tolerance, Interval):
            pair = np.asarray(tolerance, dtype=float).reshape(-1)
            if pair.size != 2:
                raise BadParameter("risk_tolerance must have exactly two entries")
            tolerance = Interval(float(pair[0]), float(pair[1]))

        history = ReturnHistory(returns=X)
        universe = estimate_universe(
            history,
            forecasts=self.forecasts,
            risk_free_rate=self.risk_free_rate,
            window=self.recent_window,
        )
        n_all = universe.n_risky + 1
        if self.initial_holdings is None:
            holdings = np.zeros(n_all)
            holdings[-1] = 1.0
        else:
            holdings = broadcast_per_asset("initial_holdings", self.initial_holdings, n_all)
        problem = PortfolioProblem(
            universe=universe,
            transaction_rates=broadcast_per_asset(
                "transaction_rates", self.transaction_rates, n_all
            ),
            initial_holdings=holdings,
            upper_bounds=broadcast_per_asset("upper_bounds", self.upper_bounds, n_all),
            risk_tolerance=tolerance,
        )
        solution = solve_portfolio(problem, alpha=self.alpha, lam=self.lam)

        self.n_periods_, self.n_assets_ = X.shape
        self.problem_ = problem
        self.solution_ = solution
        self.weights_ = solution.allocation.copy()
        self.objective_value_ = solution.objective_value
        self.net_return_interval_ = solution.net_return
        self.risk_interval_ = solution.risk
        self.satisfaction_ = solution.satisfaction
        self.transaction_cost_ = solution.cost
        return self

    def predict(self, X):
        """Realized portfolio return per period of ``X`` under the
        fitted weights (risk-free weight earns its fixed rate)."""
        self._check_fitted()
        X = check_returns_matrix(X)
        if X.shape[1] != self.n_assets_:
            raise BadParameter(
                f"X has {X.shape[1]} assets, fitted on {self.n_assets_}"
            )
        risky = self.weights_[:-1]
        free = self.weights_[-1]
        return X @ risky + free * self.problem_.universe.risk_free_rate

    def _check_fitted(self):
        if not hasattr(self, "weights_"):
            raise AttributeError("selector is not fitted; call fit first")
