"""
Brute-force ground truth for finite instances and a seeded random instance generator.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.config.settings.base import config_env
from src.config.settings.logger_config import logger
from src.models.domain.geometry import Metric, MetricKind, PointSet
from src.models.domain.mapping import MultiMap
from src.models.domain.problem import ProximityProblem
from src.models.domain.theta import ThetaFamily
from src.models.schemas.instance import (
    AlphaEntry,
    InstanceFile,
    MetricEntry,
    ParamsEntry,
    SeedsEntry,
    ThetaEntry,
)
from src.models.schemas.report import OracleReport
from src.repository.crud.instance import build_problem, point_set_entries
from src.solvers.bpp_solver import find_seeds
from src.solvers.metric_core import dist_set_set, pairwise_distances
from src.solvers.proximal_structure import check_weak_P, proximal_pairs
from src.utilities.constants import LATTICE_BOUND, MAX_LATTICE_DIM, ErrorMessages
from src.utilities.messages.exceptions.errors import InstanceValidationError


def oracle_bpp(
    A: PointSet, B: PointSet, F: MultiMap, metric: Metric, eps_prox: float = config_env.EPS_PROX
) -> OracleReport:
    """
    Every x in A with D(x, F x) = d(A, B), found by exhaustive search.

    Args:
        A, B (PointSet): The two sets.
        F (MultiMap): The map.
        metric (Metric): Metric on the ambient space.
        eps_prox (float): Tolerance of the equality.

    Returns:
        OracleReport: d(A, B), the best proximity points and every gap D(x, F x) - d(A, B).
    """
    F.check_against(len(A), len(B))
    d_AB, _ = dist_set_set(A, B, metric)
    to_b = pairwise_distances(A.coords, B.coords, metric)
    gaps = [float(to_b[x, list(F.image(x))].min()) - d_AB for x in range(len(A))]
    bpps = [x for x, gap in enumerate(gaps) if gap <= eps_prox]
    return OracleReport(d_AB=d_AB, bpps=bpps, bpp_points=[list(A[x]) for x in bpps], gaps=gaps)


def oracle_for(problem: ProximityProblem, eps_prox: Optional[float] = None) -> OracleReport:
    eps = problem.limits.eps_prox if eps_prox is None else eps_prox
    return oracle_bpp(problem.A, problem.B, problem.mapping, problem.metric, eps)


@dataclass(frozen=True)
class GenerationProfile:
    """
    Shape of the random instances.

    Attributes:
        n_A, n_B (int): Sizes of A and B (n_B is ignored when same_sets).
        dim (int): Dimension of the integer lattice [-LATTICE_BOUND, LATTICE_BOUND]^dim.
        metric (MetricKind): L1, L2 or LINF.
        image_size (int): Number of B-points in every image.
        force_weak_P (bool): Reject draws whose pairing lacks the weak P-property.
        same_sets (bool): Draw A = B (fixed-point instances).
        force_range (bool): Draw the images of A0 points from B0.
        k (float): Contraction exponent written to the instance.
        lam (float): Lambda written to the instance.
        planted_pairs (int): Length of the planted proximal chain; below 2, or with
            same_sets or dim = 1, every point is drawn at random.

    Raises:
        InstanceValidationError: If a size is below 1, the parameters are out of range
            or the lattice cannot hold the requested points.
    """

    n_A: int = 5
    n_B: int = 5
    dim: int = 2
    metric: MetricKind = MetricKind.L1
    image_size: int = 2
    force_weak_P: bool = True
    same_sets: bool = False
    force_range: bool = True
    k: float = 0.9
    lam: float = 0.0
    planted_pairs: int = 4

    def __post_init__(self):
        checks = (
            ("n_A", ">= 1", self.n_A >= 1),
            ("n_B", ">= 1", self.n_B >= 1),
            ("dim", f"in [1, {MAX_LATTICE_DIM}]", 1 <= self.dim <= MAX_LATTICE_DIM),
            ("image_size", ">= 1", self.image_size >= 1),
            ("planted_pairs", ">= 0", self.planted_pairs >= 0),
            ("metric", "L1, L2 or LINF", self.metric is not MetricKind.TABLE),
            ("k", "in (0, 1)", 0 < self.k < 1),
            ("lam", ">= 0", self.lam >= 0),
        )
        for name, wanted, ok in checks:
            if not ok:
                message = ErrorMessages.PROFILE_VALUE.value.format(name, wanted, getattr(self, name))
                raise InstanceValidationError(message, field=name)
        needed = self.n_A if self.same_sets else self.n_A + self.n_B
        capacity = (2 * LATTICE_BOUND + 1) ** self.dim
        if needed > capacity:
            raise InstanceValidationError(
                ErrorMessages.PROFILE_CAPACITY.value.format(LATTICE_BOUND, self.dim, capacity, needed)
            )

    @property
    def chain_length(self) -> int:
        """Planted pairs that fit on one lattice axis; 0 when nothing is planted."""
        if self.same_sets or self.dim < 2:
            return 0
        m = min(self.planted_pairs, self.n_A, self.n_B)
        while m >= 2 and _chain_offsets(m, self.metric)[0] > 2 * LATTICE_BOUND:
            m -= 1
        return m if m >= 2 else 0


@dataclass(frozen=True)
class GenerationResult:
    instance: Optional[InstanceFile]
    problem: Optional[ProximityProblem]
    attempts: int
    exhausted: bool


def _chain_offsets(m: int, metric: MetricKind) -> np.ndarray:
    # positions 2^(m-1) - 1, ..., 3, 1, 0; one step halves the distance to 0 or better
    spacing = 2 if metric is MetricKind.LINF else 1
    return spacing * (2 ** np.arange(m - 1, -1, -1) - 1)


def _lattice_points(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    side = 2 * LATTICE_BOUND + 1
    flat = rng.choice(side**dim, size=count, replace=False)
    return np.stack(np.unravel_index(flat, (side,) * dim), axis=1).astype(float) - LATTICE_BOUND


def _plant_chain(rng: np.random.Generator, profile: GenerationProfile, m: int) -> tuple[np.ndarray, np.ndarray]:
    """
    m points of A on one axis with their d(A, B) = 1 partners in B, one step across.

    Under LINF the chain spacing is doubled, so no other A-B pair sits at distance 1.
    """
    offsets = _chain_offsets(m, profile.metric)
    axis, across = (int(i) for i in rng.choice(profile.dim, size=2, replace=False))
    start = rng.integers(-LATTICE_BOUND, LATTICE_BOUND + 1, size=profile.dim).astype(float)
    sign = 1 if rng.random() < 0.5 else -1
    if sign > 0:
        low, high = -LATTICE_BOUND, LATTICE_BOUND - offsets[0]
    else:
        low, high = -LATTICE_BOUND + offsets[0], LATTICE_BOUND
    chain_A = np.tile(start, (m, 1))
    chain_A[:, axis] = rng.integers(low, high + 1) + sign * offsets
    chain_B = chain_A.copy()
    chain_B[:, across] += 1 if start[across] < LATTICE_BOUND else -1
    return chain_A, chain_B


def _draw_chain(rng: np.random.Generator, profile: GenerationProfile, m: int) -> Optional[InstanceFile]:
    """
    Plant a proximal chain p_0, ..., p_m-1 whose map moves one step toward p_m-1 and
    surround it with random points; images of chain points are the next image_size
    chain partners, so the map halves distances along the chain.
    """
    chain_A, chain_B = _plant_chain(rng, profile, m)
    taken = {tuple(p) for p in np.vstack([chain_A, chain_B])}
    extra_A, extra_B = profile.n_A - m, profile.n_B - m
    pool = _lattice_points(rng, profile.n_A + profile.n_B, profile.dim)
    fresh = np.array([p for p in pool if tuple(p) not in taken][: extra_A + extra_B]).reshape(-1, profile.dim)
    order_A, order_B = rng.permutation(profile.n_A), rng.permutation(profile.n_B)
    A = PointSet(np.vstack([chain_A, fresh[:extra_A]])[order_A], label="A")
    B = PointSet(np.vstack([chain_B, fresh[extra_A:]])[order_B], label="B")
    row_A, row_B = np.argsort(order_A), np.argsort(order_B)

    metric = Metric(profile.metric)
    pp = proximal_pairs(A, B, metric)
    planted = {(int(row_A[i]), int(row_B[i])) for i in range(m)}
    if set(pp.pairs) != planted:
        return None

    images: dict[int, list[int]] = {}
    for x in range(len(A)):
        rank = int(order_A[x])
        if rank < m:
            ranks = {min(rank + step, m - 1) for step in range(1, profile.image_size + 1)}
            images[x] = sorted(int(row_B[r]) for r in ranks)
        else:
            size = min(profile.image_size, len(B))
            images[x] = sorted(int(j) for j in rng.choice(len(B), size=size, replace=False))
    return _instance(profile, A, B, images)


def _draw(rng: np.random.Generator, profile: GenerationProfile) -> Optional[InstanceFile]:
    m = profile.chain_length
    if m:
        return _draw_chain(rng, profile, m)
    if profile.same_sets:
        A = PointSet(_lattice_points(rng, profile.n_A, profile.dim), label="A")
        B = A
    else:
        both = _lattice_points(rng, profile.n_A + profile.n_B, profile.dim)
        A = PointSet(both[: profile.n_A], label="A")
        B = PointSet(both[profile.n_A :], label="B")
    metric = Metric(profile.metric)
    pp = proximal_pairs(A, B, metric)
    if profile.force_weak_P and not check_weak_P(pp).holds:
        return None

    a0 = set(pp.A0)
    images: dict[int, list[int]] = {}
    for x in range(len(A)):
        pool = np.array(pp.B0 if profile.force_range and x in a0 else range(len(B)), dtype=int)
        size = min(profile.image_size, pool.size)
        images[x] = sorted(int(j) for j in rng.choice(pool, size=size, replace=False))
    return _instance(profile, A, B, images)


def _instance(profile: GenerationProfile, A: PointSet, B: PointSet, images: dict[int, list[int]]) -> InstanceFile:
    entries_A = point_set_entries(A)
    return InstanceFile(
        metric=MetricEntry(kind=profile.metric),
        dim=profile.dim,
        A=entries_A,
        B=entries_A if profile.same_sets else point_set_entries(B),
        F=images,
        alpha=AlphaEntry(constant=1.0),
        theta=ThetaEntry(family=ThetaFamily.EXP),
        params=ParamsEntry(k=profile.k, lam=profile.lam),
    )


def gen_instance(
    seed: int, profile: Optional[GenerationProfile] = None, budget: int = config_env.REJECTION_BUDGET
) -> GenerationResult:
    """
    Draw a random instance on the integer lattice, rejecting draws that miss the profile.

    Theta is EXP, alpha is constant 1 and the seeds come from `find_seeds`, preferring a
    start that is not already a best proximity point. A draw is rejected when the
    weak P-property is required but fails, when random points add proximal pairs to a
    planted chain, or when no admissible seeds exist.

    Args:
        seed (int): Seed of `numpy.random.default_rng`; equal seeds give equal instances.
        profile (Optional[GenerationProfile]): Instance shape.
        budget (int): Maximum number of draws.

    Returns:
        GenerationResult: The instance and its problem, or None with exhausted = True.
    """
    profile = profile or GenerationProfile()
    rng = np.random.default_rng(seed)
    for attempt in range(1, budget + 1):
        doc = _draw(rng, profile)
        if doc is None:
            continue
        problem = build_problem(doc)
        seeds = find_seeds(problem, prefer_moving=True)
        if seeds is None:
            continue
        doc = doc.model_copy(update={"seeds": SeedsEntry(x0=seeds.x0, x1=seeds.x1, y0=seeds.y0)})
        problem = build_problem(doc)
        logger.debug(f"Generated instance from seed {seed} after {attempt} draw(s)")
        return GenerationResult(instance=doc, problem=problem, attempts=attempt, exhausted=False)
    logger.warning(ErrorMessages.REJECTION_EXHAUSTED.value.format(budget))
    return GenerationResult(instance=None, problem=None, attempts=budget, exhausted=True)
