import numpy as np
import pytest

from src.models.domain.geometry import PointSet
from src.models.domain.mapping import AlphaMap, MultiMap
from src.solvers.metric_core import build_point_set
from src.solvers.proximal_structure import (
    check_alpha_proximal_admissible,
    check_P,
    check_range_condition,
    check_weak_P,
    proximal_pairs,
)
from src.utilities.messages.exceptions.errors import MappingError


@pytest.fixture
def reference_pairing(reference_problem):
    return proximal_pairs(reference_problem.A, reference_problem.B, reference_problem.metric)


def test_reference_proximal_subsets(reference_pairing) -> None:
    assert reference_pairing.d_AB == 8.0
    assert reference_pairing.pairs == ((0, 0), (1, 9))
    assert reference_pairing.A0 == (0, 1)
    assert reference_pairing.B0 == (0, 9)
    summary = reference_pairing.summary()
    assert summary.A0_points == [[-2.0, 2.0], [2.0, 2.0]]
    assert summary.B0_points == [[-8.0, 0.0], [8.0, 0.0]]
    assert reference_pairing.partners_of_b(9) == (1,)
    assert reference_pairing.partners_of_image((0, 9, 20)) == (0, 1)


def test_identical_sets_pair_with_themselves(taxicab) -> None:
    X = PointSet([[0.0, 0.0], [3.0, 1.0], [-2.0, 5.0]])
    pp = proximal_pairs(X, X, taxicab)
    assert pp.d_AB == 0.0
    assert pp.A0 == pp.B0 == (0, 1, 2)
    assert check_weak_P(pp).holds
    assert check_P(pp).holds


def test_weak_p_and_p_on_reference(reference_pairing) -> None:
    assert check_weak_P(reference_pairing).holds
    report = check_P(reference_pairing)
    assert not report.holds
    assert report.witnesses[0].values == [4.0, 16.0]


def test_weak_p_fails_on_crafted_table(weak_p_table_sets) -> None:
    A, B, metric = weak_p_table_sets
    pp = proximal_pairs(A, B, metric)
    assert pp.d_AB == 1.0
    report = check_weak_P(pp)
    assert not report.holds
    witness = report.witnesses[0]
    assert witness.values == [5.0, 3.0]
    assert witness.a_indices == [0, 1]
    assert witness.b_indices == [0, 1]


def test_p_implies_weak_p_on_random_sets(taxicab) -> None:
    rng = np.random.default_rng(5)
    for _ in range(60):
        points = build_point_set(rng.integers(-4, 5, size=(8, 2)), "S")
        split = len(points) // 2
        if split == 0:
            continue
        A = points.subset(range(split), "A")
        B = points.subset(range(split, len(points)), "B")
        pp = proximal_pairs(A, B, taxicab)
        assert bool(pp.A0) == bool(pp.B0)
        assert all(abs(pp.distances[a, b] - pp.d_AB) <= pp.eps_prox for a, b in pp.pairs)
        if check_P(pp).holds:
            assert check_weak_P(pp).holds


def test_admissibility_on_reference(reference_problem, reference_pairing) -> None:
    F = reference_problem.mapping
    assert check_alpha_proximal_admissible(F, AlphaMap.constant_map(1.1), reference_pairing).holds
    assert check_alpha_proximal_admissible(F, AlphaMap.constant_map(1.0), reference_pairing).holds


def test_admissibility_fails_on_crafted_table(taxicab) -> None:
    A = PointSet([[0.0, 1.0], [1.0, 1.0]], label="A")
    B = PointSet([[0.0, 0.0], [1.0, 0.0]], label="B")
    F = MultiMap.from_lists([[1], [0]])
    alpha = AlphaMap.from_table([[1.0, 0.0], [1.0, 1.0]])
    report = check_alpha_proximal_admissible(F, alpha, proximal_pairs(A, B, taxicab))
    assert not report.holds
    assert report.witnesses[0].a_indices == [1, 0, 0, 1]


def test_admissibility_needs_a_total_map(reference_pairing) -> None:
    with pytest.raises(MappingError):
        check_alpha_proximal_admissible(MultiMap.from_lists([[0], [9]]), AlphaMap.constant_map(1.0), reference_pairing)
    with pytest.raises(MappingError):
        MultiMap.from_lists([[0], [], [9]])


def test_range_condition(reference_problem, reference_pairing) -> None:
    assert check_range_condition(reference_problem.mapping, reference_pairing).holds
    broken = MultiMap.from_lists([[0, 1], [9], [20]])
    report = check_range_condition(broken, reference_pairing)
    assert not report.holds
    assert report.witnesses[0].a_indices == [0]
    assert report.witnesses[0].b_indices == [1]


def test_range_condition_on_self_map(halving_problem) -> None:
    pp = proximal_pairs(halving_problem.A, halving_problem.B, halving_problem.metric)
    assert check_range_condition(halving_problem.mapping, pp).holds
