"""
Theta catalog evaluation, numeric checks of the three Theta conditions and the
almost Theta-contraction audit

    alpha(x, y) * Theta(H(Fx, Fy)) <= Theta(d(x, y) + lambda * D(y, Fx)) ** k

over ordered pairs x != y with H(Fx, Fy) > 0. All comparisons run on log Theta.
"""

import math
from itertools import permutations
from typing import Iterable, Optional, Sequence

import numpy as np

from src.config.settings.logger_config import logger
from src.models.domain.geometry import Metric, PointSet
from src.models.domain.mapping import MultiMap
from src.models.domain.theta import ContractionParams, ThetaSpec
from src.models.schemas.report import ContractionAudit, ContractionSample, Theta3Estimate, ThetaConditionReport
from src.solvers.metric_core import pairwise_distances
from src.utilities.constants import LIMIT_WINDOW, STABILITY_SPREAD, ErrorMessages
from src.utilities.messages.exceptions.errors import ThetaDomainError

THETA3_ALPHAS = tuple(10.0 ** -j for j in range(2, 9))
THETA3_K_GRID = tuple(np.round(np.arange(1, 20) / 20, 2))
DEFAULT_T_GRID = tuple(np.geomspace(1e-8, 1e2, 61))

PairMeasure = tuple[int, int, float, float, float, float]


def theta_log(theta: ThetaSpec, t: float) -> float:
    """
    log Theta(t) for t > 0.

    Raises:
        ThetaDomainError: If t <= 0 or t is not finite.
    """
    if not t > 0 or not math.isfinite(t):
        raise ThetaDomainError(ErrorMessages.THETA_DOMAIN.value.format(t))
    return theta.log_value(t)


def theta_eval(theta: ThetaSpec, t: float) -> float:
    """
    Theta(t) for t > 0; overflows to inf for arguments whose Theta exceeds the float range.

    Args:
        theta (ThetaSpec): The catalog entry.
        t (float): Argument in (0, inf).

    Returns:
        float: Theta(t) > 1.

    Raises:
        ThetaDomainError: If t <= 0.
    """
    log_v = theta_log(theta, t)
    return math.exp(log_v) if log_v < 709.0 else math.inf


def theta_inverse(theta: ThetaSpec, v: float) -> float:
    """
    Theta^-1(v) for v > 1.

    Raises:
        ThetaDomainError: If v <= 1.
    """
    if not v > 1:
        raise ThetaDomainError(ErrorMessages.THETA_INVERSE_DOMAIN.value.format(v))
    return theta.inverse_from_log(math.log(v))


def check_theta_conditions(theta: ThetaSpec, grid: Optional[Sequence[float]] = None) -> ThetaConditionReport:
    """
    Numerically check the three Theta conditions on sampled grids.

    Theta1 is strict monotonicity on the grid. Theta2 asks that Theta(t) tends to 1
    as t shrinks and stays away from 1 for t away from 0. Theta3 asks for some k in
    (0, 1) with (Theta(a) - 1) / a^k converging to a finite positive limit as a -> 0+;
    a k passes when the last three ratios agree within STABILITY_SPREAD and sit inside
    LIMIT_WINDOW.

    Args:
        theta (ThetaSpec): The catalog entry.
        grid (Optional[Sequence[float]]): Sample points for Theta1 and Theta2.

    Returns:
        ThetaConditionReport: Verdicts plus the per-k ratio tails.
    """
    t_grid = np.sort(np.asarray(grid if grid is not None else DEFAULT_T_GRID, dtype=float))
    logs = np.array([theta_log(theta, t) for t in t_grid])
    theta1 = bool(np.all(np.diff(logs) > 0))
    small = np.array([theta_log(theta, a) for a in THETA3_ALPHAS])
    theta2 = bool(small[-1] < 1e-3 and np.all(np.diff(small) < 0) and logs[-1] > 1e-3)

    estimates: list[Theta3Estimate] = []
    for k in THETA3_K_GRID:
        ratios = [math.expm1(log_v) / a**k for a, log_v in zip(THETA3_ALPHAS, small)]
        tail = ratios[-3:]
        spread = max(tail) / min(tail) if min(tail) > 0 else math.inf
        stable = spread <= STABILITY_SPREAD and all(LIMIT_WINDOW[0] < r < LIMIT_WINDOW[1] for r in tail)
        estimates.append(
            Theta3Estimate(
                k=float(k), ratios=ratios, spread=spread, stable=stable, estimate=tail[-1] if stable else None
            )
        )
    passing = [estimate for estimate in estimates if estimate.stable]
    best = min(passing, key=lambda estimate: estimate.spread) if passing else None
    vanishing = not passing and all(estimate.ratios[-1] < estimate.ratios[0] for estimate in estimates)
    if best is None:
        logger.warning(f"Theta = {theta.describe()} fails the Theta3 limit check on k-grid (vanishing = {vanishing})")
    return ThetaConditionReport(
        theta=theta.describe(),
        theta1=theta1,
        theta2=theta2,
        theta3=best is not None,
        best_k=best.k if best else None,
        limit_estimate=best.estimate if best else None,
        vanishing=vanishing,
        estimates=estimates,
    )


def audit_samples(
    theta: ThetaSpec, params: ContractionParams, samples: Iterable[PairMeasure], scope: str = "A0"
) -> ContractionAudit:
    """
    Audit precomputed pair measurements (x, y, alpha, H, d, D) against the contraction inequality.

    A pair with H = 0, alpha = 0 or alpha * Theta(H) <= 1 imposes nothing. A pair with
    H > 0 but d + lambda * D = 0 cannot satisfy the inequality and is recorded as a
    structural violation. Every other pair requires k >= log(alpha Theta(H)) / log Theta(d + lambda D).

    Returns:
        ContractionAudit: holds iff there is no structural violation and k_min <= k.
    """
    audited: list[ContractionSample] = []
    violations: list[ContractionSample] = []
    k_min: Optional[float] = None
    worst: Optional[tuple[int, int]] = None
    checked = 0
    for x, y, alpha_xy, H, d, D in samples:
        checked += 1
        if H <= 0 or alpha_xy <= 0:
            continue
        sample = ContractionSample(x=x, y=y, alpha=alpha_xy, H=H, d=d, D=D)
        sample.lhs_log = math.log(alpha_xy) + theta_log(theta, H)
        base = d + params.lam * D
        if sample.lhs_log <= 0:
            audited.append(sample)
            continue
        if base <= 0:
            violations.append(sample)
            continue
        sample.rhs_log = theta_log(theta, base)
        sample.required_k = sample.lhs_log / sample.rhs_log
        audited.append(sample)
        if k_min is None or sample.required_k > k_min:
            k_min, worst = sample.required_k, (x, y)
    holds = not violations and (k_min is None or k_min <= params.k)
    return ContractionAudit(
        holds=holds,
        k=params.k,
        lam=params.lam,
        theta=theta.describe(),
        scope=scope,
        k_min=k_min,
        worst_pair=worst,
        checked=checked,
        samples=audited,
        structural_violations=violations,
    )


def _image_hausdorff(images: Sequence[tuple[int, ...]], B_dist: np.ndarray, i: int, j: int) -> float:
    block = B_dist[np.ix_(images[i], images[j])]
    return float(max(block.min(axis=1).max(), block.min(axis=0).max()))


def audit_contraction(
    F: MultiMap,
    metric: Metric,
    theta: ThetaSpec,
    params: ContractionParams,
    A: PointSet,
    B: PointSet,
    scope: Optional[Sequence[int]] = None,
    scope_label: str = "A",
) -> ContractionAudit:
    """
    Audit the almost Theta-contraction inequality over ordered pairs of a subset of A.

    Args:
        F (MultiMap): The map.
        metric (Metric): Metric on the ambient space.
        theta (ThetaSpec): Theta from the catalog.
        params (ContractionParams): k, lambda and alpha.
        A, B (PointSet): Domain and codomain of F.
        scope (Optional[Sequence[int]]): A-indices whose pairs are audited; all of A when None.
        scope_label (str): Name of the scope in the report.

    Returns:
        ContractionAudit: The verdict for params.k, the minimal feasible k and per-pair samples.
    """
    F.check_against(len(A), len(B))
    indices = list(range(len(A))) if scope is None else list(scope)
    A_dist = pairwise_distances(A.coords, A.coords, metric)
    B_dist = pairwise_distances(B.coords, B.coords, metric)
    # D(y, F x) for every y in A and x in A
    to_image = pairwise_distances(A.coords, B.coords, metric)
    images = F.images

    def measures() -> Iterable[PairMeasure]:
        for x, y in permutations(indices, 2):
            D = float(to_image[y, list(images[x])].min())
            yield x, y, params.alpha(x, y), _image_hausdorff(images, B_dist, x, y), float(A_dist[x, y]), D

    audit = audit_samples(theta, params, measures(), scope=scope_label)
    logger.debug(f"Contraction audit over {scope_label}: holds = {audit.holds}, k_min = {audit.k_min}")
    return audit


def audit_single_valued(
    f: Sequence[int],
    metric: Metric,
    theta: ThetaSpec,
    params: ContractionParams,
    A: PointSet,
    B: PointSet,
    scope: Optional[Sequence[int]] = None,
    scope_label: str = "A",
) -> ContractionAudit:
    """Audit a single-valued map A -> B given as target indices, through singleton images."""
    return audit_contraction(MultiMap.singletons(f), metric, theta, params, A, B, scope, scope_label)
