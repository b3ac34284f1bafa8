"""
Proximal Picard iteration for best proximity points of multivalued maps.

Starting from x0, x1 in A0 and y0 in F x0 with d(x1, y0) = d(A, B), each step picks
y_n in F x_n nearest to y_n-1 and then x_n+1 in A0 with d(x_n+1, y_n) = d(A, B),
nearest to x_n. The run stops as soon as D(x_n, F x_n) reaches d(A, B).
"""

from itertools import permutations
from typing import Iterator, Optional, Sequence

import numpy as np

from src.config.settings.logger_config import logger
from src.models.domain.geometry import Metric, PointSet
from src.models.domain.mapping import MultiMap
from src.models.domain.problem import ProximityProblem, Seeds, SolverLimits
from src.models.domain.theta import ContractionParams, ThetaSpec
from src.models.schemas.report import (
    BppResult,
    ContractionAudit,
    HypothesisReport,
    IterationTrace,
    SolverOutcome,
    TraceStep,
    UniquenessReport,
)
from src.solvers.metric_core import pairwise_distances
from src.solvers.proximal_structure import (
    ProximalPairing,
    check_alpha_proximal_admissible,
    check_P,
    check_range_condition,
    check_weak_P,
    proximal_pairs,
)
from src.solvers.theta_kit import audit_contraction
from src.utilities.constants import ErrorMessages
from src.utilities.messages.exceptions.errors import MappingError, SeedError


def certify_hypotheses(problem: ProximityProblem, limits: Optional[SolverLimits] = None) -> HypothesisReport:
    """
    Run every machine-checkable hypothesis of the existence theorem on an instance.

    The contraction is audited twice: over A0, which holds every pair the iteration
    can visit, and over all of A.

    Args:
        problem (ProximityProblem): The instance.
        limits (Optional[SolverLimits]): Tolerances; the instance's own when None.

    Returns:
        HypothesisReport: Range condition, weak P, P, admissibility and both audits.
    """
    limits = limits or problem.limits
    pp = proximal_pairs(problem.A, problem.B, problem.metric, limits.eps_prox)
    return _certify(problem, pp, limits)


def _certify(problem: ProximityProblem, pp: ProximalPairing, limits: SolverLimits) -> HypothesisReport:
    audit_args = (problem.mapping, problem.metric, problem.theta, problem.params, problem.A, problem.B)
    report = HypothesisReport(
        range_condition=check_range_condition(problem.mapping, pp),
        weak_P=check_weak_P(pp, limits.eps_prox),
        P=check_P(pp, limits.eps_prox),
        admissible=check_alpha_proximal_admissible(problem.mapping, problem.alpha, pp, limits.eps_prox),
        contraction=audit_contraction(*audit_args, scope=pp.A0, scope_label="A0"),
        contraction_full=audit_contraction(*audit_args, scope=None, scope_label="A"),
        assumptions=list(problem.assumptions),
    )
    if not report.certified:
        logger.warning(f"Hypotheses not certified: {', '.join(report.failed())}")
    return report


def find_seeds(
    problem: ProximityProblem, limits: Optional[SolverLimits] = None, prefer_moving: bool = False
) -> Optional[Seeds]:
    """
    First admissible (x0, x1, y0) in set order: x0 in A0, y0 in F x0, x1 in A0 with
    d(x1, y0) = d(A, B) and alpha(x0, x1) >= 1. None when no such triple exists.

    With prefer_moving, triples whose x1 (then x0) is not yet a best proximity point
    come first, so the run from them takes at least one step when one exists.
    """
    limits = limits or problem.limits
    pp = proximal_pairs(problem.A, problem.B, problem.metric, limits.eps_prox)
    if not prefer_moving:
        return _find_seeds(problem, pp)
    candidates = list(_seed_triples(problem, pp))
    if not candidates:
        return None
    images = problem.mapping.images
    settled = {x for x in pp.A0 if _gap(pp, images, x) <= limits.eps_stop}
    return min(candidates, key=lambda s: (s.x1 in settled, s.x0 in settled))


def _seed_triples(problem: ProximityProblem, pp: ProximalPairing) -> Iterator[Seeds]:
    for x0 in pp.A0:
        for y0 in problem.mapping.image(x0):
            for x1 in pp.partners_of_b(y0):
                if problem.alpha(x0, x1) >= 1:
                    yield Seeds(x0, x1, y0)


def _find_seeds(problem: ProximityProblem, pp: ProximalPairing) -> Optional[Seeds]:
    return next(_seed_triples(problem, pp), None)


def _validate_seeds(problem: ProximityProblem, pp: ProximalPairing, seeds: Seeds) -> None:
    bounds = {"x0": len(problem.A), "x1": len(problem.A), "y0": len(problem.B)}
    for name, value in seeds._asdict().items():
        size = bounds[name]
        if not 0 <= value < size:
            raise SeedError(ErrorMessages.SEED_INDEX.value.format(name, value))
    a0 = set(pp.A0)
    for name, value in (("x0", seeds.x0), ("x1", seeds.x1)):
        if value not in a0:
            raise SeedError(ErrorMessages.SEED_NOT_IN_A0.value.format(name, problem.A[value]))
    if seeds.y0 not in problem.mapping.image(seeds.x0):
        raise SeedError(ErrorMessages.SEED_NOT_IN_IMAGE.value.format(seeds.y0, seeds.x0))
    if not pp.is_proximal(seeds.x1, seeds.y0):
        raise SeedError(ErrorMessages.SEED_NOT_PROXIMAL.value.format(pp.distances[seeds.x1, seeds.y0], pp.d_AB))
    alpha_01 = problem.alpha(seeds.x0, seeds.x1)
    if alpha_01 < 1:
        raise SeedError(ErrorMessages.SEED_ALPHA.value.format(alpha_01))


def _decay_bound(theta: ThetaSpec, params: ContractionParams, d01: float, n: int) -> float:
    """Theta^-1(Theta(d(x0, x1)) ** (k ** n))."""
    if d01 <= 0:
        return 0.0
    return theta.inverse_from_log(params.k**n * theta.log_value(d01))


def _relaxed_step(theta: ThetaSpec, params: ContractionParams, previous: float, d_AB: float) -> float:
    """Theta^-1(Theta(previous + lambda * d(A, B)) ** k)."""
    base = previous + params.lam * d_AB
    if base <= 0:
        return 0.0
    return theta.inverse_from_log(params.k * theta.log_value(base))


def solve(
    problem: ProximityProblem,
    seeds: Optional[Seeds] = None,
    limits: Optional[SolverLimits] = None,
) -> BppResult:
    """
    Run the proximal Picard iteration from admissible seeds.

    Args:
        problem (ProximityProblem): The instance.
        seeds (Optional[Seeds]): Starting data; the instance's seeds, then the first
            admissible triple, when None.
        limits (Optional[SolverLimits]): Tolerances and the iteration cap.

    Returns:
        BppResult: The final iterate, its gap, the full trace and the hypothesis report.
            Certified only when every hypothesis holds, alpha(x_n, x_n+1) >= 1 at every
            move and the run converged.

    Raises:
        SeedError: If A0 is empty, no seeds exist, or the given seeds are not admissible.
    """
    limits = limits or problem.limits
    pp = proximal_pairs(problem.A, problem.B, problem.metric, limits.eps_prox)
    if not pp.A0:
        raise SeedError(ErrorMessages.EMPTY_A0.value)
    seeds = seeds or problem.seeds or _find_seeds(problem, pp)
    if seeds is None:
        logger.error(ErrorMessages.NO_SEEDS.value)
        raise SeedError(ErrorMessages.NO_SEEDS.value)
    try:
        _validate_seeds(problem, pp, seeds)
    except SeedError as e:
        logger.error(f"Rejected seeds {tuple(seeds)}: {e}")
        raise

    hypotheses = _certify(problem, pp, limits)
    trace = _iterate(problem, pp, seeds, limits)
    final = trace.steps[-1] if trace.outcome is not SolverOutcome.MAX_ITER else min(trace.steps, key=lambda s: s.gap)
    alpha_ok = all(step.alpha_ok for step in trace.moves)
    certified = hypotheses.certified and alpha_ok and trace.outcome is SolverOutcome.CONVERGED
    if not alpha_ok:
        logger.warning("alpha(x_n, x_n+1) < 1 along the run; result is not certified")
    logger.info(f"Solver finished: {trace.outcome.value} at {final.x} after {len(trace.moves)} moves")
    return BppResult(
        point=final.x,
        point_index=final.x_index,
        gap=final.gap,
        certified=certified,
        trace=trace,
        hypotheses=hypotheses,
    )


def _iterate(problem: ProximityProblem, pp: ProximalPairing, seeds: Seeds, limits: SolverLimits) -> IterationTrace:
    A, B, metric = problem.A, problem.B, problem.metric
    theta, params = problem.theta, problem.params
    images = problem.mapping.images
    A_dist = pairwise_distances(A.coords, A.coords, metric)
    B_dist = pairwise_distances(B.coords, B.coords, metric)
    a0 = np.array(pp.A0, dtype=int)
    proximal = np.abs(pp.distances[a0, :] - pp.d_AB) <= limits.eps_prox

    d01 = float(A_dist[seeds.x0, seeds.x1])
    relaxed = d01
    x, y_prev = seeds.x1, seeds.y0
    seen: set[tuple[int, int]] = set()
    steps: list[TraceStep] = []

    for n in range(1, limits.max_iter + 1):
        image = list(images[x])
        gap = float(pp.distances[x, image].min()) - pp.d_AB
        if gap <= limits.eps_stop or y_prev in images[x]:
            steps.append(TraceStep(n=n, x_index=x, x=list(A[x]), gap=max(gap, 0.0)))
            detail = f"D(x_n, F x_n) - d(A, B) = {gap:.3g}"
            return IterationTrace(outcome=SolverOutcome.CONVERGED, detail=detail, steps=steps)
        if (x, y_prev) in seen:
            steps.append(TraceStep(n=n, x_index=x, x=list(A[x]), gap=gap))
            detail = f"state (A[{x}], B[{y_prev}]) repeats"
            return IterationTrace(outcome=SolverOutcome.CYCLE, detail=detail, steps=steps)
        seen.add((x, y_prev))

        y = image[int(np.argmin(B_dist[y_prev, image]))]
        partners = a0[proximal[:, y]]
        if not partners.size:
            steps.append(TraceStep(n=n, x_index=x, x=list(A[x]), gap=gap, y_index=y, y=list(B[y])))
            detail = ErrorMessages.NO_PARTNER.value.format(y, n)
            logger.warning(detail)
            return IterationTrace(outcome=SolverOutcome.HYPOTHESIS_VIOLATION, detail=detail, steps=steps)
        x_next = int(partners[int(np.argmin(A_dist[x, partners]))])
        relaxed = _relaxed_step(theta, params, relaxed, pp.d_AB)
        step = TraceStep(
            n=n,
            x_index=x,
            x=list(A[x]),
            gap=gap,
            y_index=y,
            y=list(B[y]),
            next_index=x_next,
            d_step=float(A_dist[x, x_next]),
            d_y=float(B_dist[y_prev, y]),
            alpha_ok=problem.alpha(x, x_next) >= 1,
            bound=_decay_bound(theta, params, d01, n),
            relaxed_bound=relaxed,
        )
        steps.append(step)
        logger.debug(f"step {n}: x = {step.x}, y = {step.y}, d_step = {step.d_step:g}, gap = {gap:g}")
        if limits.eps_step > 0 and step.d_step <= limits.eps_step:
            closing = TraceStep(n=n + 1, x_index=x_next, x=list(A[x_next]), gap=_gap(pp, images, x_next))
            steps.append(closing)
            detail = f"d(x_n, x_n+1) = {step.d_step:.3g}"
            return IterationTrace(outcome=SolverOutcome.STALLED, detail=detail, steps=steps)
        x, y_prev = x_next, y

    steps.append(TraceStep(n=limits.max_iter + 1, x_index=x, x=list(A[x]), gap=_gap(pp, images, x)))
    return IterationTrace(outcome=SolverOutcome.MAX_ITER, detail=f"{limits.max_iter} iterations", steps=steps)


def _gap(pp: ProximalPairing, images: Sequence[tuple[int, ...]], x: int) -> float:
    return float(pp.distances[x, list(images[x])].min()) - pp.d_AB


def solve_fixed_point(
    X: PointSet,
    F: MultiMap,
    metric: Metric,
    theta: ThetaSpec,
    params: ContractionParams,
    x0: int,
    limits: Optional[SolverLimits] = None,
) -> BppResult:
    """
    Fixed-point mode: A = B = X, so d(A, B) = 0 and best proximity points are fixed points.

    x1 is the first point of F x0 with alpha(x0, x1) >= 1 and y0 = x1.

    Raises:
        SeedError: If no point of F x0 passes the alpha gate.
    """
    limits = limits or SolverLimits()
    problem = ProximityProblem(A=X, B=X, metric=metric, mapping=F, theta=theta, params=params, limits=limits)
    if not 0 <= x0 < len(X):
        raise SeedError(ErrorMessages.SEED_INDEX.value.format("x0", x0))
    x1 = next((j for j in F.image(x0) if params.alpha(x0, j) >= 1), None)
    if x1 is None:
        raise SeedError(ErrorMessages.SEED_ALPHA.value.format(params.alpha(x0, F.image(x0)[0])))
    return solve(problem, Seeds(x0, x1, x1), limits)


def solve_problem_fixed_point(problem: ProximityProblem, x0: int, limits: Optional[SolverLimits] = None) -> BppResult:
    """Fixed-point mode for a loaded instance whose A and B coincide."""
    same_sets = problem.A.coords.shape == problem.B.coords.shape and np.array_equal(problem.A.coords, problem.B.coords)
    if not (problem.is_self_map or same_sets):
        raise MappingError(ErrorMessages.FIXED_POINT_SETS.value)
    return solve_fixed_point(
        problem.A, problem.mapping, problem.metric, problem.theta, problem.params, x0, limits or problem.limits
    )


def check_uniqueness_H(
    bpps: Sequence[int],
    problem: ProximityProblem,
    audit: ContractionAudit,
) -> UniquenessReport:
    """
    Condition H (alpha >= 1 on every pair of best proximity points) and its consequence.

    Uniqueness is expected when H holds and the contraction audit holds. Finding more
    than one best proximity point then contradicts the expectation; the diagnostic
    reports the lambda * D(x2, F x1) term, which the uniqueness argument needs to vanish.

    Args:
        bpps (Sequence[int]): Indices into A of the best proximity points found.
        problem (ProximityProblem): The instance they belong to.
        audit (ContractionAudit): Contraction audit of the instance.

    Returns:
        UniquenessReport: The verdict and the diagnostic.
    """
    pairs = list(permutations(bpps, 2))
    condition_h = all(problem.alpha(x1, x2) >= 1 for x1, x2 in pairs)
    unique_expected = condition_h and audit.holds
    contradiction = unique_expected and len(bpps) > 1
    lambda_term = 0.0
    if pairs:
        to_image = pairwise_distances(problem.A.coords, problem.B.coords, problem.metric)
        lambda_term = max(
            problem.params.lam * float(to_image[x2, list(problem.mapping.image(x1))].min()) for x1, x2 in pairs
        )
    if contradiction:
        diagnostic = (
            f"{len(bpps)} best proximity points although H and the contraction (k_min = {audit.k_min}) hold: "
            f"the uniqueness argument needs lambda * D(x2, F x1) = 0, here it reaches {lambda_term:g}"
        )
        logger.warning(diagnostic)
    elif not condition_h:
        diagnostic = "condition H fails: some pair of best proximity points has alpha < 1; no uniqueness claim"
    elif not audit.holds:
        diagnostic = "contraction audit fails; no uniqueness claim"
    else:
        diagnostic = f"{len(bpps)} best proximity point(s), consistent with uniqueness"
    return UniquenessReport(
        condition_h=condition_h,
        unique_expected=unique_expected,
        contradiction=contradiction,
        lambda_term=lambda_term,
        diagnostic=diagnostic,
    )
