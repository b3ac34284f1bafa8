import math

import pytest

from src.models.domain.geometry import PointSet
from src.models.domain.mapping import AlphaMap, MultiMap
from src.models.domain.theta import ContractionParams, ThetaFamily, ThetaSpec
from src.solvers.proximal_structure import proximal_pairs
from src.solvers.theta_kit import (
    audit_contraction,
    audit_samples,
    audit_single_valued,
    check_theta_conditions,
    theta_eval,
    theta_inverse,
    theta_log,
)
from src.utilities.messages.exceptions.errors import ThetaDomainError

EXP = ThetaSpec(ThetaFamily.EXP)
POW5 = ThetaSpec(ThetaFamily.POW_BASE, 5.0)
EXP_SQRT = ThetaSpec(ThetaFamily.EXP_SQRT)

REFERENCE_K_MIN = (math.log(1.1) + 16 * math.log(5)) / (28 * math.log(5))
FULL_K_MIN = (math.log(1.1) + 23 * math.log(5)) / (24 * math.log(5))


def test_catalog_values() -> None:
    assert theta_eval(POW5, 16) == pytest.approx(5.0**16, rel=1e-12)
    assert theta_eval(EXP, 1e-12) == pytest.approx(1.0)
    assert theta_eval(EXP_SQRT, 1.0) == pytest.approx(math.e)
    assert theta_eval(POW5, 1000.0) == math.inf
    assert theta_log(POW5, 1000.0) == pytest.approx(1000 * math.log(5))


@pytest.mark.parametrize("theta", [EXP, POW5, EXP_SQRT])
def test_inverse_round_trip(theta) -> None:
    for t in (1e-6, 0.5, 3.0, 40.0):
        assert theta_inverse(theta, theta_eval(theta, t)) == pytest.approx(t, rel=1e-9)


@pytest.mark.parametrize("t", [0.0, -1.0, math.inf])
def test_theta_domain(t) -> None:
    with pytest.raises(ThetaDomainError):
        theta_eval(EXP, t)


def test_invalid_parameters() -> None:
    with pytest.raises(ThetaDomainError):
        theta_inverse(EXP, 1.0)
    with pytest.raises(ThetaDomainError):
        ThetaSpec(ThetaFamily.POW_BASE, 1.0)
    with pytest.raises(ThetaDomainError):
        ContractionParams(k=1.0)
    with pytest.raises(ThetaDomainError):
        ContractionParams(k=0.5, lam=-1.0)


def test_theta_conditions_monotone_and_near_one() -> None:
    for theta in (EXP, POW5, EXP_SQRT):
        report = check_theta_conditions(theta)
        assert report.theta1
        assert report.theta2


def test_audit_samples_structural_violation() -> None:
    audit = audit_samples(EXP, ContractionParams(k=0.5), [(0, 1, 1.0, 1.0, 0.0, 0.0)])
    assert not audit.holds
    assert len(audit.structural_violations) == 1
    assert audit.k_min is None


def test_audit_samples_skips_pairs_that_impose_nothing() -> None:
    samples = [(0, 1, 1.0, 0.0, 1.0, 1.0), (1, 0, 0.0, 5.0, 1.0, 1.0), (0, 2, 0.5, 0.1, 1.0, 0.0)]
    audit = audit_samples(EXP, ContractionParams(k=0.1), samples)
    assert audit.holds
    assert audit.k_min is None
    assert audit.checked == 3


def test_reference_audit_over_full_set(reference_problem) -> None:
    params = ContractionParams(k=0.9, lam=2.0, alpha=AlphaMap.constant_map(1.1))
    p = reference_problem
    audit = audit_contraction(p.mapping, p.metric, POW5, params, p.A, p.B)
    assert audit.scope == "A"
    assert audit.k_min == pytest.approx(FULL_K_MIN)
    assert not audit.holds
    relaxed = ContractionParams(k=0.99, lam=2.0, alpha=AlphaMap.constant_map(1.1))
    assert audit_contraction(p.mapping, p.metric, POW5, relaxed, p.A, p.B).holds


def test_constant_map_is_vacuous(reference_problem) -> None:
    p = reference_problem
    F = MultiMap.from_lists([[0], [0], [0]])
    audit = audit_contraction(F, p.metric, EXP, ContractionParams(k=0.1), p.A, p.B)
    assert audit.holds
    assert audit.k_min is None


def test_single_valued_matches_singleton_images(reference_problem) -> None:
    p = reference_problem
    params = ContractionParams(k=0.9, lam=2.0, alpha=AlphaMap.constant_map(1.1))
    a0 = proximal_pairs(p.A, p.B, p.metric).A0
    audit = audit_single_valued([0, 9, 20], p.metric, POW5, params, p.A, p.B, scope=a0, scope_label="A0")
    assert audit.k_min == pytest.approx(REFERENCE_K_MIN)


def test_exp_audit_reduces_to_lipschitz_condition(taxicab) -> None:
    # alpha = 1, lambda = 0 and e^t: the inequality is H(Fx, Fy) <= k d(x, y)
    A = PointSet([[0.0, 0.0], [4.0, 0.0], [0.0, 5.0]])
    B = PointSet([[0.0, -1.0], [2.0, -1.0], [0.0, -4.0]])
    F = MultiMap.singletons([0, 1, 2])
    ratios = {(0, 1): 2 / 4, (0, 2): 3 / 5, (1, 2): 5 / 9}
    for k in (0.55, 0.65):
        audit = audit_contraction(F, taxicab, EXP, ContractionParams(k=k), A, B)
        assert audit.holds == all(ratio <= k for ratio in ratios.values())
        assert audit.k_min == pytest.approx(max(ratios.values()))


def test_audit_is_monotone_in_k(reference_problem) -> None:
    p = reference_problem
    verdicts = []
    for k in (0.3, 0.5, 0.7, 0.9, 0.95, 0.97, 0.99):
        params = ContractionParams(k=k, lam=2.0, alpha=AlphaMap.constant_map(1.1))
        verdicts.append(audit_contraction(p.mapping, p.metric, POW5, params, p.A, p.B).holds)
    assert verdicts == sorted(verdicts)
    assert verdicts[-1] and not verdicts[0]
