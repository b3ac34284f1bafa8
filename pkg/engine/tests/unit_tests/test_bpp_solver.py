from dataclasses import replace

import numpy as np
import pytest

from src.models.domain.geometry import Metric, MetricKind, PointSet
from src.models.domain.mapping import AlphaMap, MultiMap
from src.models.domain.problem import ProximityProblem, Seeds, SolverLimits
from src.models.domain.theta import ContractionParams, ThetaFamily, ThetaSpec
from src.models.schemas.report import SolverOutcome
from src.solvers.bpp_solver import (
    certify_hypotheses,
    check_uniqueness_H,
    find_seeds,
    solve,
    solve_fixed_point,
    solve_problem_fixed_point,
)
from src.utilities.messages.exceptions.errors import MappingError, SeedError

EXP = ThetaSpec(ThetaFamily.EXP)


def _line(n: int) -> PointSet:
    return PointSet(np.arange(n, dtype=float).reshape(-1, 1), label="X")


def _swap_problem() -> ProximityProblem:
    X = _line(2)
    return ProximityProblem(
        A=X,
        B=X,
        metric=Metric(MetricKind.L1),
        mapping=MultiMap.from_lists([[1], [0]]),
        theta=EXP,
        params=ContractionParams(k=0.9),
    )


def test_find_seeds_on_reference(reference_problem) -> None:
    assert find_seeds(reference_problem) == Seeds(0, 0, 0)
    assert find_seeds(reference_problem, prefer_moving=True) == Seeds(0, 0, 0)


def test_find_seeds_prefers_a_moving_start(halving_problem) -> None:
    assert find_seeds(halving_problem) == Seeds(0, 0, 0)
    seeds = find_seeds(halving_problem, prefer_moving=True)
    assert seeds == Seeds(2, 1, 1)
    result = solve(halving_problem, seeds)
    assert result.outcome is SolverOutcome.CONVERGED
    assert [step.d_step for step in result.trace.moves] == [1.0]
    assert result.point == [0.0]


def test_reference_converges_at_first_step(reference_problem) -> None:
    result = solve(reference_problem)
    assert result.outcome is SolverOutcome.CONVERGED
    assert result.point == [-2.0, 2.0]
    assert result.gap == 0.0
    assert len(result.trace.steps) == 1
    assert result.trace.steps[0].n == 1
    assert result.certified


def test_certify_hypotheses_reference(reference_problem) -> None:
    report = certify_hypotheses(reference_problem)
    assert report.certified
    assert report.contraction.scope == "A0"
    assert not report.contraction_full.holds
    assert not report.P.holds
    assert report.assumptions == ["alpha_subsequential"]
    assert report.failed() == []


@pytest.mark.parametrize("seeds", [Seeds(2, 0, 0), Seeds(0, 0, 9), Seeds(0, 1, 0), Seeds(0, 0, 99)])
def test_inadmissible_seeds(reference_problem, seeds) -> None:
    with pytest.raises(SeedError):
        solve(reference_problem, seeds)


def test_alpha_gate_on_seeds(reference_problem) -> None:
    problem = replace(reference_problem, params=ContractionParams(k=0.9, alpha=AlphaMap.constant_map(0.5)))
    with pytest.raises(SeedError):
        solve(problem, Seeds(0, 0, 0))
    assert find_seeds(problem) is None
    with pytest.raises(SeedError):
        solve(replace(problem, seeds=None))


def test_halving_chain_trace(halving_problem) -> None:
    result = solve(halving_problem)
    assert result.outcome is SolverOutcome.CONVERGED
    assert result.point == [0.0]
    assert [step.x_index for step in result.trace.steps] == [5, 2, 1, 0]
    assert [step.d_step for step in result.trace.moves] == [3.0, 1.0, 1.0]
    assert result.trace.shrink_holds()
    # x_n+1 is always a proximal partner of y_n, here d(A, B) = 0
    assert all(step.next_index == step.y_index for step in result.trace.moves)
    assert not result.certified
    assert result.hypotheses.contraction.k_min == pytest.approx(1.0)


def test_range_violation_mid_run(reference_problem) -> None:
    problem = replace(reference_problem, mapping=MultiMap.from_lists([[9], [10], [18]]), seeds=Seeds(0, 1, 9))
    result = solve(problem)
    assert result.outcome is SolverOutcome.HYPOTHESIS_VIOLATION
    assert result.trace.steps[-1].y_index == 10
    assert not result.certified


def test_cycle_detection() -> None:
    swap = _swap_problem()
    result = solve_fixed_point(swap.A, swap.mapping, swap.metric, EXP, swap.params, 0)
    assert result.outcome is SolverOutcome.CYCLE
    assert not result.certified


def test_iteration_cap_returns_best_gap(halving_problem) -> None:
    result = solve(halving_problem, limits=SolverLimits(max_iter=1))
    assert result.outcome is SolverOutcome.MAX_ITER
    assert result.point == [2.0]
    assert result.gap == 1.0


def test_stalled_step(halving_problem) -> None:
    result = solve(halving_problem, limits=SolverLimits(eps_step=1.0))
    assert result.outcome is SolverOutcome.STALLED
    assert result.point == [1.0]


def test_fixed_point_mode() -> None:
    halving = MultiMap.singletons([x // 2 for x in range(11)])
    result = solve_fixed_point(_line(11), halving, Metric(MetricKind.L1), EXP, ContractionParams(k=0.9), 10)
    assert result.outcome is SolverOutcome.CONVERGED
    assert result.point == [0.0]

    single = solve_fixed_point(
        PointSet([[3.0]]), MultiMap.singletons([0]), Metric(MetricKind.L1), EXP, ContractionParams(k=0.5), 0
    )
    assert single.outcome is SolverOutcome.CONVERGED
    assert single.point == [3.0]
    assert single.certified


def test_fixed_point_mode_needs_equal_sets(reference_problem, halving_problem) -> None:
    assert solve_problem_fixed_point(halving_problem, 10).point == [0.0]
    with pytest.raises(MappingError):
        solve_problem_fixed_point(reference_problem, 0)
    with pytest.raises(SeedError):
        solve_problem_fixed_point(halving_problem, 11)


def test_uniqueness_on_reference(reference_problem) -> None:
    audit = certify_hypotheses(reference_problem).contraction
    report = check_uniqueness_H([0, 1], reference_problem, audit)
    assert report.condition_h
    assert report.unique_expected
    assert report.contradiction
    assert report.lambda_term == 24.0
    assert "lambda" in report.diagnostic


def test_uniqueness_without_condition_h(reference_problem) -> None:
    problem = replace(
        reference_problem,
        params=ContractionParams(k=0.9, lam=2.0, alpha=AlphaMap.from_table([[1, 0, 1], [0, 1, 1], [1, 1, 1]])),
    )
    audit = certify_hypotheses(problem).contraction
    report = check_uniqueness_H([0, 1], problem, audit)
    assert not report.condition_h
    assert not report.contradiction


def test_single_bpp_is_consistent(reference_problem) -> None:
    audit = certify_hypotheses(reference_problem).contraction
    report = check_uniqueness_H([0], reference_problem, audit)
    assert report.unique_expected
    assert not report.contradiction
    assert report.lambda_term == 0.0


def test_swap_map_is_not_certified() -> None:
    assert not certify_hypotheses(_swap_problem()).certified
