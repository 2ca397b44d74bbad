"""LP solver: unit polytopes, residual verification, and a
basic-feasible-solution enumeration oracle on random bounded LPs."""

import numpy as np
import pytest

from intervalfolio import (
    IterationLimit,
    LPStatus,
    MalformedLP,
    StandardLP,
    solve_lp,
    verify_solution,
)
from conftest import enumerate_vertices_best, random_bounded_lp

INF = float("inf")


def make_lp(c, eq=None, eq_rhs=None, le=None, le_rhs=None, lower=None, upper=None):
    n = len(c)
    return StandardLP(
        objective=np.array(c, dtype=float),
        eq_coefficients=np.array(eq, dtype=float) if eq is not None else np.zeros((0, n)),
        eq_rhs=np.array(eq_rhs, dtype=float) if eq_rhs is not None else np.zeros(0),
        le_coefficients=np.array(le, dtype=float) if le is not None else np.zeros((0, n)),
        le_rhs=np.array(le_rhs, dtype=float) if le_rhs is not None else np.zeros(0),
        var_lower=np.array(lower, dtype=float) if lower is not None else np.zeros(n),
        var_upper=np.array(upper, dtype=float) if upper is not None else np.full(n, INF),
    )


class TestUnitPolytopes:
    def test_tight_single_constraint(self):
        res = solve_lp(make_lp([1, 1], le=[[1, 1]], le_rhs=[1]))
        assert res.status is LPStatus.OPTIMAL
        assert res.objective == pytest.approx(1.0, abs=1e-9)

    def test_unbounded_without_rows(self):
        res = solve_lp(make_lp([1.0]))
        assert res.status is LPStatus.UNBOUNDED

    def test_unbounded_direction_within_rows(self):
        # x2 can grow along the row while x1 stays fixed
        res = solve_lp(make_lp([0, 1], le=[[1, -1]], le_rhs=[0]))
        assert res.status is LPStatus.UNBOUNDED

    def test_budget_with_caps(self):
        res = solve_lp(
            make_lp([3, 2], eq=[[1, 1]], eq_rhs=[1], upper=[0.6, 0.8])
        )
        assert res.status is LPStatus.OPTIMAL
        assert res.x == pytest.approx([0.6, 0.4], abs=1e-9)
        assert res.objective == pytest.approx(2.6, abs=1e-9)

    def test_infeasible_budget(self):
        res = solve_lp(make_lp([1, 1], eq=[[1, 1]], eq_rhs=[2], upper=[0.5, 0.5]))
        assert res.status is LPStatus.INFEASIBLE

    def test_crossed_bounds_infeasible(self):
        res = solve_lp(make_lp([1.0], lower=[2.0], upper=[1.0]))
        assert res.status is LPStatus.INFEASIBLE

    def test_negative_lower_bounds(self):
        # the row x1 + x2 >= -4 binds before the box corner (-3, -3)
        res = solve_lp(make_lp([-1, -1], le=[[-1, -1]], le_rhs=[4], lower=[-3, -3], upper=[3, 3]))
        assert res.status is LPStatus.OPTIMAL
        assert res.objective == pytest.approx(4.0, abs=1e-9)

    def test_free_variable(self):
        # minimize x (maximize -x) with x free but pinned by an equality
        res = solve_lp(
            make_lp([-1, 0], eq=[[1, 1]], eq_rhs=[2], lower=[-INF, 0], upper=[INF, 1])
        )
        assert res.status is LPStatus.OPTIMAL
        assert res.objective == pytest.approx(-1.0, abs=1e-9)
        assert res.x == pytest.approx([1.0, 1.0], abs=1e-9)

    def test_redundant_rows_dropped(self):
        res = solve_lp(
            make_lp(
                [1, 1],
                eq=[[1, 1], [2, 2]],
                eq_rhs=[1, 2],
                upper=[0.7, 0.7],
            )
        )
        assert res.status is LPStatus.OPTIMAL
        assert res.objective == pytest.approx(1.0, abs=1e-9)

    def test_determinism(self):
        lp = make_lp([3, 2, 1], le=[[1, 1, 1], [1, 0, 2]], le_rhs=[1, 1], upper=[1, 1, 1])
        first = solve_lp(lp)
        second = solve_lp(lp)
        assert first.status is second.status
        assert first.objective == second.objective
        assert np.array_equal(first.x, second.x)
        assert first.iterations == second.iterations

    def test_iteration_cap(self):
        lp = make_lp([3, 2], eq=[[1, 1]], eq_rhs=[1], upper=[0.6, 0.8])
        with pytest.raises(IterationLimit):
            solve_lp(lp, max_iterations=0)

    def test_weak_duality_hand_bounds(self):
        # max 3x1+2x2, x1+x2=1, caps (0.6, 0.8): relaxing either family
        # gives a valid upper bound on the optimum
        res = solve_lp(make_lp([3, 2], eq=[[1, 1]], eq_rhs=[1], upper=[0.6, 0.8]))
        assert res.objective <= 3 * 0.6 + 2 * 0.8 + 1e-9  # bounds only
        assert res.objective <= 3 * 1.0 + 1e-9  # budget row only


class TestMalformed:
    def test_dimension_mismatches(self):
        with pytest.raises(MalformedLP):
            StandardLP(
                objective=[1.0, 2.0],
                eq_coefficients=[[1.0]],
                eq_rhs=[1.0],
                le_coefficients=np.zeros((0, 2)),
                le_rhs=[],
                var_lower=[0, 0],
                var_upper=[1, 1],
            )
        with pytest.raises(MalformedLP):
            StandardLP(
                objective=[1.0],
                eq_coefficients=np.zeros((0, 1)),
                eq_rhs=[1.0],
                le_coefficients=np.zeros((0, 1)),
                le_rhs=[],
                var_lower=[0],
                var_upper=[1],
            )
        with pytest.raises(MalformedLP):
            make_lp([1.0], lower=[np.nan])
        with pytest.raises(MalformedLP):
            make_lp([np.inf])

    def test_verify_wrong_length(self):
        with pytest.raises(MalformedLP):
            verify_solution(make_lp([1, 1]), [1.0])


class TestVerifySolution:
    def test_optimal_self_consistency(self):
        lp = make_lp([3, 2], eq=[[1, 1]], eq_rhs=[1], upper=[0.6, 0.8])
        res = solve_lp(lp)
        report = verify_solution(lp, res.x)
        assert report.ok
        assert report.max_violation <= 1e-9

    def test_perturbed_solution_flagged(self):
        lp = make_lp([3, 2], eq=[[1, 1]], eq_rhs=[1], upper=[0.6, 0.8])
        report = verify_solution(lp, [0.7, 0.4])
        assert not report.ok
        assert report.eq_residuals[0] == pytest.approx(0.1)
        assert report.upper_violations[0] == pytest.approx(0.1)
        assert "0" in report.worst()

    def test_zero_vector_budget_violation(self):
        lp = make_lp([1, 1], eq=[[1, 1]], eq_rhs=[1], upper=[1, 1])
        report = verify_solution(lp, [0.0, 0.0])
        assert report.eq_residuals[0] == pytest.approx(1.0)
        assert not report.ok


class TestOracle:
    def test_random_lps_match_enumeration(self):
        rng = np.random.default_rng(20260819)
        for _ in range(60):
            lp = random_bounded_lp(rng)
            res = solve_lp(lp)
            assert res.status is LPStatus.OPTIMAL, "feasible by construction"
            oracle = enumerate_vertices_best(lp)
            assert res.objective == pytest.approx(oracle, abs=1e-7)
            assert verify_solution(lp, res.x, 1e-9).ok

    def test_larger_instances_against_enumeration(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            lp = random_bounded_lp(rng, max_vars=8)
            res = solve_lp(lp)
            assert res.status is LPStatus.OPTIMAL
            oracle = enumerate_vertices_best(lp)
            assert res.objective == pytest.approx(oracle, abs=1e-7)
