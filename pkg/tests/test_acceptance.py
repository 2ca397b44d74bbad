"""Acceptance gate: every required behavior exercised end to end, one
pass line per check with its measured runtime."""

import json
import time

import numpy as np
import pytest
from starlette.testclient import TestClient

from intervalfolio import (
    DEFAULT_LAMBDAS,
    Interval,
    bracket_values,
    build_program,
    check_monotonicity,
    index_quadruple,
    parse_config_data,
    parse_history_text,
    assemble_problem,
    risk_interval,
    satisfaction_index,
    solve_portfolio,
    sweep,
    transaction_cost,
    verify_solution,
    solve_lp,
    LPStatus,
)
from intervalfolio.cli import run_cli
from intervalfolio.service import create_app
from conftest import (
    enumerate_vertices_best,
    grid_best,
    random_bounded_lp,
    random_problem,
    six_stock_config,
    six_stock_history_csv,
)
from test_intervals import FIGURE_CASES


def report(name: str, detail: str) -> None:
    print(f"[PASS] {name}: {detail}")


@pytest.fixture(scope="module")
def oracle_batch():
    """Fifty random instances with strictly positive transaction rates,
    solved once and reused by the oracle and auxiliary checks."""
    rng = np.random.default_rng(20260819)
    batch = []
    started = time.perf_counter()
    for _ in range(50):
        problem = random_problem(rng, n=3, T=4, k_low=1e-4, k_high=0.01)
        alpha = float(rng.uniform(0.1, 1.0))
        lam = float(rng.uniform(0.0, 1.0))
        solution = solve_portfolio(problem, alpha, lam)
        batch.append((problem, alpha, lam, solution))
    elapsed = time.perf_counter() - started
    return batch, elapsed


class TestAcceptance:
    def test_index_quadruples_exact(self):
        index_quadruple(Interval(0, 1), Interval(0, 1))  # warm-up
        started = time.perf_counter()
        results = [index_quadruple(a, b) for a, b, _ in FIGURE_CASES]
        elapsed = time.perf_counter() - started
        for (a, b, expected), got in zip(FIGURE_CASES, results):
            assert tuple(got) == expected, (a, b)
        assert elapsed < 1e-3
        report(
            "index quadruples exact",
            f"7 reconstructed pairs, zero tolerance, {elapsed * 1e3:.3f} ms < 1 ms",
        )

    def test_linearization_identity(self):
        rng = np.random.default_rng(424242)
        started = time.perf_counter()
        mismatches = 0
        for _ in range(10_000):
            a_lower = rng.uniform(-1, 1)
            a = Interval(a_lower, a_lower + rng.uniform(0.001, 1.0))
            b_lower = rng.uniform(-1, 1)
            b = Interval(b_lower, b_lower + rng.uniform(0.001, 1.0))
            alpha = float(rng.uniform(0.0, 2.0))
            holds = satisfaction_index(a, b) >= alpha
            lhs = (1 - alpha) * b.upper + alpha * b.lower
            rhs = (1 - alpha) * a.lower + alpha * a.upper
            if holds != (lhs >= rhs):
                # boundary ties are excused up to float slack
                if abs(satisfaction_index(a, b) - alpha) > 1e-12 and abs(lhs - rhs) > 1e-12:
                    mismatches += 1
        elapsed = time.perf_counter() - started
        assert mismatches == 0
        assert elapsed < 1.0
        report(
            "linearization identity",
            f"10000 random triples, alpha in [0, 2], 0 counterexamples, {elapsed:.2f} s < 1 s",
        )

    def test_portfolio_solver_beats_grid_oracle(self, oracle_batch):
        batch, solve_elapsed = oracle_batch
        started = time.perf_counter()
        for problem, alpha, lam, solution in batch:
            best = grid_best(problem, alpha, lam, step=0.05)
            assert solution.objective_value >= best - 1e-6
            lp = build_program(problem, alpha, lam)
            assert verify_solution(lp, solution.lp_variables, 1e-9).ok
        elapsed = solve_elapsed + (time.perf_counter() - started)
        assert elapsed < 5.0
        report(
            "portfolio solver vs grid oracle",
            f"50 instances (3 assets, 4 periods), objective >= grid best - 1e-6, "
            f"residuals verified at 1e-9, {elapsed:.2f} s < 5 s",
        )

    def test_sweep_monotone_and_bracketed(self):
        rng = np.random.default_rng(31337)
        alphas = (0.25, 0.5, 0.75, 1.0)
        lambdas = tuple(DEFAULT_LAMBDAS) + (1.0,)
        started = time.perf_counter()
        violations = 0
        cells = 0
        for _ in range(20):
            problem = random_problem(
                rng, n=int(rng.integers(2, 4)), T=int(rng.integers(3, 5))
            )
            table = sweep(problem, alphas=alphas, lambdas=lambdas)
            assert all(row.feasible for row in table.rows)
            violations += len(check_monotonicity(table, tol=1e-9).violations)
            floor, ceiling = bracket_values(table, alpha_lo=0.25, alpha_hi=1.0)
            for row in table.rows:
                assert floor - 1e-9 <= row.objective_value <= ceiling + 1e-9
                cells += 1
        elapsed = time.perf_counter() - started
        assert violations == 0
        assert elapsed < 10.0
        report(
            "sweep monotonicity and brackets",
            f"20 feasible instances, 0 violations at 1e-9, corner brackets hold "
            f"on all {cells} cells, {elapsed:.2f} s < 10 s",
        )

    def test_auxiliary_variables_consistent(self, oracle_batch):
        batch, _ = oracle_batch
        started = time.perf_counter()
        for problem, _, _, solution in batch:
            layout = solution.layout
            recomputed = transaction_cost(solution.allocation, problem)
            assert abs(solution.lp_variables[layout.cost_bound] - recomputed) <= 1e-9
            buys = solution.lp_variables[layout.buys]
            sells = solution.lp_variables[layout.sells]
            assert np.all(np.minimum(np.abs(buys), np.abs(sells)) <= 1e-9)
        elapsed = time.perf_counter() - started
        report(
            "auxiliary variables consistent",
            f"50 solves with positive rates: cost bound tight at 1e-9, no "
            f"simultaneous buy and sell, {elapsed * 1e3:.1f} ms",
        )

    def test_six_stock_pipeline(self):
        csv_text = six_stock_history_csv()
        config_data = six_stock_config()
        started = time.perf_counter()
        history = parse_history_text(csv_text)
        problem = assemble_problem(history, parse_config_data(config_data))
        solution = solve_portfolio(problem, alpha=0.5, lam=0.24)
        elapsed = time.perf_counter() - started
        budget = float(np.sum(solution.allocation))
        recomputed_sd = satisfaction_index(
            risk_interval(solution.allocation, problem.universe),
            problem.risk_tolerance,
        )
        assert abs(budget - 1.0) <= 1e-9
        assert recomputed_sd >= 0.5 - 1e-9
        assert elapsed < 0.05
        report(
            "six-stock fixture pipeline",
            f"solve at alpha=0.5, lambda=0.24 feasible, satisfaction "
            f"{recomputed_sd:.3f} >= 0.5, budget exact, {elapsed * 1e3:.1f} ms < 50 ms",
        )

    def test_lp_solver_matches_enumeration(self):
        rng = np.random.default_rng(987654321)
        started = time.perf_counter()
        worst = 0.0
        for _ in range(200):
            lp = random_bounded_lp(rng, max_vars=8)
            result = solve_lp(lp)
            assert result.status is LPStatus.OPTIMAL
            oracle = enumerate_vertices_best(lp)
            worst = max(worst, abs(result.objective - oracle))
            assert abs(result.objective - oracle) <= 1e-7
        elapsed = time.perf_counter() - started
        assert elapsed < 10.0
        report(
            "lp solver vs enumeration",
            f"200 random bounded LPs (<= 8 vars), max objective gap "
            f"{worst:.2e} <= 1e-7, {elapsed:.2f} s < 10 s",
        )

    def test_cli_api_equivalence(self, tmp_path):
        history_path = tmp_path / "history.csv"
        history_path.write_text(six_stock_history_csv())
        config_path = tmp_path / "config.json"
        config_path.write_text(json.dumps(six_stock_config()))
        out_path = tmp_path / "solution.json"
        assert run_cli([
            "solve", "--history", str(history_path), "--config", str(config_path),
            "--alpha", "0.75", "--lambda", "0.36", "--output", str(out_path),
        ]) == 0
        cli_doc = json.loads(out_path.read_text())

        with TestClient(create_app()) as client:
            created = client.post(
                "/api/problems",
                json={"history": six_stock_history_csv(), "config": six_stock_config()},
            )
            assert created.status_code == 200
            response = client.post(
                f"/api/problems/{created.json()['id']}/solve",
                json={"alpha": 0.75, "lambda": 0.36},
            )
            assert response.status_code == 200
        api_doc = response.json()

        assert cli_doc["allocation"] == api_doc["allocation"]
        assert cli_doc["objective_value"] == api_doc["objective_value"]
        assert cli_doc["satisfaction"] == api_doc["satisfaction"]
        report(
            "cli/api equivalence",
            "identical problem and parameters produce bitwise-equal allocations",
        )
