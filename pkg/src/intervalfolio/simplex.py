"""Self-contained linear-programming solver for small dense problems.

Solves maximization problems with equality rows, <= rows, and lower and
upper variable bounds via a two-phase primal simplex.  Bounds are
handled natively (nonbasic variables rest at either bound), which keeps
the row count small for problems that are mostly bounds.

The basis is refactorized from scratch every iteration with dense
``numpy.linalg.solve``; at the tens-of-variables scale this is cheaper
to trust than incremental tableau updates.  Pivoting uses the largest
reduced cost by default and switches to Bland's rule (smallest index)
while the objective stalls, which prevents cycling.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any

import numpy as np

from .errors import IterationLimit, MalformedLP

DEFAULT_FEAS_TOL = 1e-9
DEFAULT_OPT_TOL = 1e-9
DEFAULT_MAX_ITERATIONS = 10_000

# Pivot elements and ratio-test denominators below this are treated as zero.
_PIVOT_TOL = 1e-10
_RATIO_TIE_TOL = 1e-12

_BASIC = 0
_AT_LOWER = 1
_AT_UPPER = 2
_FREE = 3


class LPStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass
class StandardLP:
    """max objective @ x  s.t.  eq rows hold with equality, le rows with <=,
    and var_lower <= x <= var_upper elementwise.

    ``layout`` is an optional caller-owned index map naming variable
    groups; the solver never reads it.
    """

    objective: np.ndarray
    eq_coefficients: np.ndarray
    eq_rhs: np.ndarray
    le_coefficients: np.ndarray
    le_rhs: np.ndarray
    var_lower: np.ndarray
    var_upper: np.ndarray
    layout: Any = None

    def __post_init__(self):
        self.objective = np.atleast_1d(np.asarray(self.objective, dtype=float))
        n = self.objective.shape[0]
        self.eq_coefficients = _as_matrix(self.eq_coefficients, n, "eq_coefficients")
        self.le_coefficients = _as_matrix(self.le_coefficients, n, "le_coefficients")
        self.eq_rhs = np.atleast_1d(np.asarray(self.eq_rhs, dtype=float))
        self.le_rhs = np.atleast_1d(np.asarray(self.le_rhs, dtype=float))
        self.var_lower = np.atleast_1d(np.asarray(self.var_lower, dtype=float))
        self.var_upper = np.atleast_1d(np.asarray(self.var_upper, dtype=float))

        if self.eq_rhs.shape[0] != self.eq_coefficients.shape[0]:
            raise MalformedLP(
                f"{self.eq_coefficients.shape[0]} equality rows but "
                f"{self.eq_rhs.shape[0]} right-hand sides"
            )
        if self.le_rhs.shape[0] != self.le_coefficients.shape[0]:
            raise MalformedLP(
                f"{self.le_coefficients.shape[0]} inequality rows but "
                f"{self.le_rhs.shape[0]} right-hand sides"
            )
        for name in ("var_lower", "var_upper"):
            if getattr(self, name).shape[0] != n:
                raise MalformedLP(f"{name} has length {getattr(self, name).shape[0]}, expected {n}")
        if not np.all(np.isfinite(self.objective)):
            raise MalformedLP("objective contains non-finite coefficients")
        if not (np.all(np.isfinite(self.eq_rhs)) and np.all(np.isfinite(self.le_rhs))):
            raise MalformedLP("right-hand sides must be finite")
        if np.any(np.isnan(self.var_lower)) or np.any(np.isnan(self.var_upper)):
            raise MalformedLP("bounds must not be NaN")
        if np.any(self.var_lower == np.inf) or np.any(self.var_upper == -np.inf):
            raise MalformedLP("bounds must leave a nonempty range")

    @property
    def n_variables(self) -> int:
        return self.objective.shape[0]


def _as_matrix(rows, n_cols: int, name: str) -> np.ndarray:
    arr = np.asarray(rows, dtype=float)
    if arr.size == 0:
        return arr.reshape(0, n_cols)
    if arr.ndim != 2:
        raise MalformedLP(f"{name} must be 2-D, got ndim={arr.ndim}")
    if arr.shape[1] != n_cols:
        raise MalformedLP(f"{name} has {arr.shape[1]} columns, expected {n_cols}")
    if not np.all(np.isfinite(arr)):
        raise MalformedLP(f"{name} contains non-finite coefficients")
    return arr


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    x: np.ndarray | None
    objective: float | None
    iterations: int


@dataclass(frozen=True)
class VerificationReport:
    """Per-row residuals of a candidate solution."""

    eq_residuals: np.ndarray
    le_violations: np.ndarray
    lower_violations: np.ndarray
    upper_violations: np.ndarray
    max_violation: float
    feas_tol: float

    @property
    def ok(self) -> bool:
        return self.max_violation <= self.feas_tol

    def worst(self) -> str:
        parts = [
            ("eq row", self.eq_residuals),
            ("le row", self.le_violations),
            ("lower bound", self.lower_violations),
            ("upper bound", self.upper_violations),
        ]
        worst_kind, worst_idx, worst_val = "none", -1, 0.0
        for kind, arr in parts:
            if arr.size and float(np.max(arr)) > worst_val:
                worst_val = float(np.max(arr))
                worst_idx = int(np.argmax(arr))
                worst_kind = kind
        if worst_idx < 0:
            return "no violations"
        return f"{worst_kind} {worst_idx}: violation {worst_val:.3e}"


def verify_solution(lp: StandardLP, x, feas_tol: float = DEFAULT_FEAS_TOL) -> VerificationReport:
    """Residuals of ``x`` against every row and bound of ``lp``."""
    x = np.asarray(x, dtype=float)
    if x.shape != (lp.n_variables,):
        raise MalformedLP(f"x has shape {x.shape}, expected ({lp.n_variables},)")
    eq_res = (
        np.abs(lp.eq_coefficients @ x - lp.eq_rhs)
        if lp.eq_rhs.size
        else np.zeros(0)
    )
    le_vio = (
        np.maximum(lp.le_coefficients @ x - lp.le_rhs, 0.0)
        if lp.le_rhs.size
        else np.zeros(0)
    )
    lo_vio = np.maximum(lp.var_lower - x, 0.0)
    up_vio = np.maximum(x - lp.var_upper, 0.0)
    lo_vio[~np.isfinite(lo_vio)] = 0.0
    up_vio[~np.isfinite(up_vio)] = 0.0
    pieces = [arr for arr in (eq_res, le_vio, lo_vio, up_vio) if arr.size]
    max_violation = max(float(np.max(a)) for a in pieces) if pieces else 0.0
    return VerificationReport(eq_res, le_vio, lo_vio, up_vio, max_violation, feas_tol)


class _Workspace:
    """Mutable state of one solve: equality system A x = b with bounds,
    a basis index list, and a bound status per column."""

    def __init__(self, A, b, lower, upper):
        self.A = A
        self.b = b
        self.lower = lower
        self.upper = upper
        self.n_cols = A.shape[1]
        self.n_rows = A.shape[0]
        self.basis: list[int] = []
        self.status = np.empty(self.n_cols, dtype=np.int8)

    def initial_bound_status(self, column: int) -> int:
        if np.isfinite(self.lower[column]):
            return _AT_LOWER
        if np.isfinite(self.upper[column]):
            return _AT_UPPER
        return _FREE

    def current_x(self) -> np.ndarray:
        """Full variable vector: nonbasic at their bound (free at 0),
        basic values from a fresh factorization."""
        x = np.where(self.status == _AT_UPPER, self.upper, self.lower)
        x[self.status == _FREE] = 0.0
        x[~np.isfinite(x)] = 0.0
        if self.basis:
            nb = self.status != _BASIC
            rhs = self.b - self.A[:, nb] @ x[nb]
            B = self.A[:, self.basis]
            x[self.basis] = np.linalg.solve(B, rhs)
        return x

    def reduced_costs(self, c: np.ndarray) -> np.ndarray:
        if not self.basis:
            return c.copy()
        B = self.A[:, self.basis]
        y = np.linalg.solve(B.T, c[self.basis])
        return c - self.A.T @ y


def _choose_entering(work: _Workspace, d: np.ndarray, opt_tol: float, bland: bool):
    """Index and direction (+1 increase, -1 decrease) of the entering
    variable, or (None, 0) at optimality."""
    improving = np.zeros(work.n_cols, dtype=bool)
    at_lower = work.status == _AT_LOWER
    at_upper = work.status == _AT_UPPER
    free = work.status == _FREE
    improving |= at_lower & (d > opt_tol)
    improving |= at_upper & (d < -opt_tol)
    improving |= free & (np.abs(d) > opt_tol)
    if not improving.any():
        return None, 0
    if bland:
        j = int(np.argmax(improving))
    else:
        scores = np.where(improving, np.abs(d), -1.0)
        j = int(np.argmax(scores))
    if at_upper[j] or (free[j] and d[j] < 0):
        return j, -1
    return j, +1


def _ratio_test(work: _Workspace, x, j: int, sigma: int, w: np.ndarray):
    """Largest step t >= 0 of the entering variable before a basic
    variable or the entering variable's own opposite bound blocks.

    Returns (t, blocking position in basis or None, bound the blocker
    hits).  A None position with finite t means a bound flip of the
    entering variable; t = inf means the step is unbounded.
    """
    t_best = np.inf
    leave_pos = None
    leave_to = _AT_LOWER
    for pos, k in enumerate(work.basis):
        delta = -sigma * w[pos]
        if delta < -_PIVOT_TOL:
            bound = work.lower[k]
            if not np.isfinite(bound):
                continue
            t = (x[k] - bound) / (-delta)
            to = _AT_LOWER
        elif delta > _PIVOT_TOL:
            bound = work.upper[k]
            if not np.isfinite(bound):
                continue
            t = (bound - x[k]) / delta
            to = _AT_UPPER
        else:
            continue
        t = max(t, 0.0)
        if t < t_best - _RATIO_TIE_TOL:
            t_best, leave_pos, leave_to = t, pos, to
        elif t <= t_best + _RATIO_TIE_TOL and leave_pos is not None and k < work.basis[leave_pos]:
            # break near-ties toward the smallest variable index so the
            # Bland fallback keeps its anti-cycling guarantee
            t_best, leave_pos, leave_to = min(t, t_best), pos, to

    span = work.upper[j] - work.lower[j]
    if work.status[j] in (_AT_LOWER, _AT_UPPER) and np.isfinite(span) and span <= t_best:
        return span, None, _AT_UPPER if work.status[j] == _AT_LOWER else _AT_LOWER
    return t_best, leave_pos, leave_to


def _run_phase(work: _Workspace, c, opt_tol, budget: int, phase: int):
    """Iterate to optimality for objective c.  Returns (status, iters)
    where status is 'optimal' or 'unbounded'."""
    iterations = 0
    bland = False
    stall = 0
    stall_threshold = 2 * max(work.n_rows, 1)
    z_prev = None

    while True:
        x = work.current_x()
        z = float(c @ x)
        if z_prev is not None:
            if z - z_prev > opt_tol:
                stall = 0
                bland = False
            else:
                stall += 1
                if stall >= stall_threshold:
                    bland = True
        z_prev = z

        d = work.reduced_costs(c)
        j, sigma = _choose_entering(work, d, opt_tol, bland)
        if j is None:
            return "optimal", iterations

        if iterations >= budget:
            raise IterationLimit(iterations, phase)
        iterations += 1

        if work.basis:
            w = np.linalg.solve(work.A[:, work.basis], work.A[:, j])
        else:
            w = np.zeros(0)
        t, leave_pos, leave_to = _ratio_test(work, x, j, sigma, w)

        if not np.isfinite(t):
            return "unbounded", iterations
        if leave_pos is None:
            work.status[j] = leave_to  # bound flip, basis unchanged
            continue
        leaving = work.basis[leave_pos]
        work.status[leaving] = leave_to
        work.basis[leave_pos] = j
        work.status[j] = _BASIC


def _drive_out_artificials(work: _Workspace, n_real: int) -> None:
    """Pivot basic artificials onto real columns; rows that admit no
    pivot are redundant and get dropped together with their artificial."""
    drop_rows: list[int] = []
    for pos in range(len(work.basis)):
        if work.basis[pos] < n_real:
            continue
        B = work.A[:, work.basis]
        e = np.zeros(work.n_rows)
        e[pos] = 1.0
        row = np.linalg.solve(B.T, e) @ work.A[:, :n_real]
        candidates = np.flatnonzero(
            (np.abs(row) > _PIVOT_TOL) & (work.status[:n_real] != _BASIC)
        )
        if candidates.size:
            entering = int(candidates[0])
            work.basis[pos] = entering
            work.status[entering] = _BASIC
        else:
            drop_rows.append(pos)

    if drop_rows:
        keep = [i for i in range(work.n_rows) if i not in drop_rows]
        work.A = work.A[keep, :]
        work.b = work.b[keep]
        work.basis = [work.basis[i] for i in keep]
        work.n_rows = len(keep)

    work.A = work.A[:, :n_real]
    work.lower = work.lower[:n_real]
    work.upper = work.upper[:n_real]
    work.status = work.status[:n_real]
    work.n_cols = n_real


def solve_lp(
    lp: StandardLP,
    feas_tol: float = DEFAULT_FEAS_TOL,
    opt_tol: float = DEFAULT_OPT_TOL,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
) -> LPResult:
    """Solve to certified optimality, or report Infeasible/Unbounded.

    Raises IterationLimit if the pivot budget is exhausted, which for
    well-scaled inputs of this size indicates a modeling bug.
    """
    n = lp.n_variables
    if np.any(lp.var_lower > lp.var_upper):
        return LPResult(LPStatus.INFEASIBLE, None, None, 0)

    n_le = lp.le_rhs.shape[0]
    # slack per <= row turns everything into equalities
    A = np.vstack(
        [
            np.hstack([lp.eq_coefficients, np.zeros((lp.eq_rhs.shape[0], n_le))]),
            np.hstack([lp.le_coefficients, np.eye(n_le)]),
        ]
    )
    b = np.concatenate([lp.eq_rhs, lp.le_rhs])
    lower = np.concatenate([lp.var_lower, np.zeros(n_le)])
    upper = np.concatenate([lp.var_upper, np.full(n_le, np.inf)])
    m = A.shape[0]
    n_real = n + n_le

    work = _Workspace(A, b, lower, upper)
    for j in range(n_real):
        work.status[j] = work.initial_bound_status(j)

    iterations = 0
    if m:
        x0 = np.where(work.status == _AT_UPPER, upper, lower)
        x0[work.status == _FREE] = 0.0
        x0[~np.isfinite(x0)] = 0.0
        residual = b - A @ x0
        signs = np.where(residual >= 0, 1.0, -1.0)
        work.A = np.hstack([A, np.diag(signs)])
        work.lower = np.concatenate([lower, np.zeros(m)])
        work.upper = np.concatenate([upper, np.full(m, np.inf)])
        work.n_cols = n_real + m
        work.status = np.concatenate([work.status, np.full(m, _BASIC, dtype=np.int8)])
        work.basis = list(range(n_real, n_real + m))

        c_phase1 = np.zeros(n_real + m)
        c_phase1[n_real:] = -1.0
        outcome, used = _run_phase(work, c_phase1, opt_tol, max_iterations, phase=1)
        iterations += used
        # phase-1 objective is bounded above by zero, so "unbounded"
        # cannot occur here
        x = work.current_x()
        if float(np.sum(x[n_real:])) > feas_tol:
            return LPResult(LPStatus.INFEASIBLE, None, None, iterations)
        _drive_out_artificials(work, n_real)

    c_full = np.concatenate([lp.objective, np.zeros(n_le)])
    outcome, used = _run_phase(work, c_full, opt_tol, max_iterations - iterations, phase=2)
    iterations += used
    if outcome == "unbounded":
        return LPResult(LPStatus.UNBOUNDED, None, None, iterations)

    x = work.current_x()
    # snap roundoff-level bound violations back onto the bounds
    x = np.clip(x, work.lower, work.upper)
    x_user = x[:n]
    objective = float(lp.objective @ x_user)
    return LPResult(LPStatus.OPTIMAL, x_user, objective, iterations)
