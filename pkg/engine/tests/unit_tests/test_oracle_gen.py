import pytest

from src.models.domain.geometry import MetricKind, PointSet
from src.models.domain.mapping import MultiMap
from src.models.schemas.report import SolverOutcome
from src.repository.crud.instance import build_problem, canonical_json
from src.solvers.bpp_solver import certify_hypotheses, solve
from src.solvers.metric_core import dist_set_set
from src.solvers.oracle_gen import GenerationProfile, gen_instance, oracle_bpp, oracle_for
from src.solvers.proximal_structure import check_range_condition, check_weak_P, proximal_pairs
from src.utilities.constants import LATTICE_BOUND
from src.utilities.messages.exceptions.errors import InstanceValidationError


def test_oracle_on_reference(reference_problem) -> None:
    report = oracle_for(reference_problem)
    assert report.d_AB == 8.0
    assert report.bpps == [0, 1]
    assert report.bpp_points == [[-2.0, 2.0], [2.0, 2.0]]
    assert report.gaps == [0.0, 0.0, 4.0]
    assert report.min_gap == 0.0


def test_identity_self_map_is_all_fixed(taxicab) -> None:
    X = PointSet([[0.0, 0.0], [1.0, 2.0], [-3.0, 1.0]])
    report = oracle_bpp(X, X, MultiMap.singletons([0, 1, 2]), taxicab)
    assert report.bpps == [0, 1, 2]
    assert report.d_AB == 0.0


def test_generation_is_deterministic() -> None:
    first, second = gen_instance(7), gen_instance(7)
    assert not first.exhausted
    assert canonical_json(first.instance) == canonical_json(second.instance)
    assert first.attempts == second.attempts


def test_generated_instance_follows_profile() -> None:
    profile = GenerationProfile(n_A=4, n_B=6, dim=3, metric=MetricKind.LINF, image_size=3, k=0.8)
    result = gen_instance(3, profile)
    problem = result.problem
    assert len(problem.A) == 4 and len(problem.B) == 6
    assert problem.A.dim == 3
    assert problem.metric.kind is MetricKind.LINF
    assert abs(problem.A.coords).max() <= LATTICE_BOUND
    assert problem.params.k == 0.8
    assert all(len(problem.mapping.image(x)) <= 3 for x in range(4))
    pp = proximal_pairs(problem.A, problem.B, problem.metric)
    assert check_weak_P(pp).holds
    assert check_range_condition(problem.mapping, pp).holds
    assert problem.seeds is not None
    assert build_problem(result.instance).seeds == problem.seeds


def test_same_sets_profile() -> None:
    result = gen_instance(4, GenerationProfile(n_A=6, same_sets=True))
    problem = result.problem
    assert problem.is_self_map
    assert dist_set_set(problem.A, problem.B, problem.metric)[0] == 0.0
    assert oracle_for(problem).min_gap >= 0.0


def test_budget_exhaustion(mocker) -> None:
    draw = mocker.patch("src.solvers.oracle_gen._draw", return_value=None)
    result = gen_instance(1, budget=5)
    assert result.exhausted
    assert result.instance is None
    assert result.attempts == 5
    assert draw.call_count == 5


def test_oracle_agrees_with_converged_certified_runs() -> None:
    agreed = 0
    for seed in range(40):
        problem = gen_instance(seed, GenerationProfile(n_A=4, n_B=4)).problem
        if not certify_hypotheses(problem).certified:
            continue
        result = solve(problem)
        oracle = oracle_for(problem)
        assert oracle.d_AB == dist_set_set(problem.A, problem.B, problem.metric)[0]
        assert oracle.min_gap >= 0.0
        if result.outcome is SolverOutcome.CONVERGED:
            assert result.point_index in oracle.bpps
            agreed += 1
    assert agreed > 0


@pytest.mark.parametrize(
    ("overrides", "field"),
    [
        ({"n_A": 0}, "n_A"),
        ({"n_B": -1}, "n_B"),
        ({"dim": 0}, "dim"),
        ({"dim": 9}, "dim"),
        ({"image_size": 0}, "image_size"),
        ({"planted_pairs": -1}, "planted_pairs"),
        ({"metric": MetricKind.TABLE}, "metric"),
        ({"k": 1.0}, "k"),
        ({"lam": -0.5}, "lam"),
    ],
)
def test_invalid_profiles_are_rejected(overrides, field) -> None:
    with pytest.raises(InstanceValidationError) as error:
        GenerationProfile(**overrides)
    assert error.value.field == field


def test_profile_capacity() -> None:
    with pytest.raises(InstanceValidationError):
        GenerationProfile(n_A=300, n_B=200)
    with pytest.raises(InstanceValidationError):
        GenerationProfile(n_A=12, n_B=10, dim=1)
    assert GenerationProfile(n_A=21, dim=1, same_sets=True).n_A == 21


def test_chain_length() -> None:
    assert GenerationProfile().chain_length == 4
    assert GenerationProfile(n_A=6, n_B=6, planted_pairs=6).chain_length == 5
    assert GenerationProfile(n_A=6, n_B=6, planted_pairs=6, metric=MetricKind.LINF).chain_length == 4
    assert GenerationProfile(n_A=3, n_B=8).chain_length == 3
    assert GenerationProfile(same_sets=True).chain_length == 0
    assert GenerationProfile(dim=1).chain_length == 0
    assert GenerationProfile(planted_pairs=1).chain_length == 0


@pytest.mark.parametrize("metric", [MetricKind.L1, MetricKind.L2, MetricKind.LINF])
def test_planted_chain_gives_moving_certified_runs(metric) -> None:
    for seed in range(5):
        problem = gen_instance(seed, GenerationProfile(metric=metric)).problem
        pp = proximal_pairs(problem.A, problem.B, problem.metric)
        assert pp.d_AB == 1.0
        assert len(pp.pairs) == len(pp.A0) == 4
        result = solve(problem)
        assert result.hypotheses.certified
        assert result.certified
        assert problem.seeds.x1 not in oracle_for(problem).bpps
        assert len(result.trace.moves) >= 1
        assert result.point_index in oracle_for(problem).bpps
        assert result.trace.shrink_holds()
        assert result.trace.decay_holds()
        steps = [step.d_step for step in result.trace.moves]
        assert all(later <= 0.5 * earlier for earlier, later in zip(steps, steps[1:]))


def test_planted_chain_keeps_random_points_off_the_pairing() -> None:
    profile = GenerationProfile(n_A=9, n_B=7, dim=3)
    result = gen_instance(11, profile)
    problem = result.problem
    assert len(problem.A) == 9 and len(problem.B) == 7
    assert abs(problem.A.coords).max() <= LATTICE_BOUND
    assert abs(problem.B.coords).max() <= LATTICE_BOUND
    assert len(proximal_pairs(problem.A, problem.B, problem.metric).pairs) == 4
