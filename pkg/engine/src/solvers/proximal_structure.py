"""
Proximal subsets A0, B0 and the structural hypotheses of the existence theorem:
the (weak) P-property, alpha-proximal admissibility and the range condition F(A0) in B0.
"""

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from src.config.settings.base import config_env
from src.config.settings.logger_config import logger
from src.models.domain.geometry import Metric, PointSet
from src.models.domain.mapping import AlphaMap, MultiMap
from src.models.schemas.report import PairingSummary, PropertyReport, Witness
from src.solvers.metric_core import pairwise_distances

MAX_WITNESSES = 5


@dataclass(frozen=True, eq=False)
class ProximalPairing:
    """
    All pairs (a, b) in A x B realizing d(A, B), with their projections A0 and B0.

    Attributes:
        A, B (PointSet): The two sets the pairing was computed on.
        metric (Metric): The metric used.
        d_AB (float): dist(A, B).
        pairs (tuple[tuple[int, int], ...]): Index pairs in row-major order.
        A0, B0 (tuple[int, ...]): Sorted indices of the proximal subsets.
        eps_prox (float): Tolerance of the equality d(a, b) = d(A, B).
        distances (np.ndarray): The |A| x |B| distance matrix.
    """

    A: PointSet
    B: PointSet
    metric: Metric
    d_AB: float
    pairs: tuple[tuple[int, int], ...]
    A0: tuple[int, ...]
    B0: tuple[int, ...]
    eps_prox: float
    distances: np.ndarray = field(repr=False)

    def partners_of_b(self, b: int) -> tuple[int, ...]:
        """A0 points a with d(a, b) = d(A, B), in set order."""
        return tuple(a for a, b2 in self.pairs if b2 == b)

    def partners_of_image(self, image: tuple[int, ...]) -> tuple[int, ...]:
        """A0 points that pair with some point of the image, in set order."""
        wanted = set(image)
        return tuple(sorted({a for a, b in self.pairs if b in wanted}))

    def is_proximal(self, a: int, b: int) -> bool:
        return abs(self.distances[a, b] - self.d_AB) <= self.eps_prox

    def summary(self) -> PairingSummary:
        return PairingSummary(
            d_AB=self.d_AB,
            eps_prox=self.eps_prox,
            A0=list(self.A0),
            B0=list(self.B0),
            A0_points=[list(self.A[a]) for a in self.A0],
            B0_points=[list(self.B[b]) for b in self.B0],
            pair_count=len(self.pairs),
        )


def proximal_pairs(A: PointSet, B: PointSet, metric: Metric, eps_prox: float = config_env.EPS_PROX) -> ProximalPairing:
    """
    Enumerate every pair realizing d(A, B).

    Args:
        A (PointSet): First set.
        B (PointSet): Second set.
        metric (Metric): Metric on the ambient space.
        eps_prox (float): Tolerance of the equality d(a, b) = d(A, B).

    Returns:
        ProximalPairing: d(A, B), the realizing pairs and the sets A0, B0.
    """
    distances = pairwise_distances(A.coords, B.coords, metric)
    d_AB = float(distances.min())
    rows, cols = np.nonzero(np.abs(distances - d_AB) <= eps_prox)
    pairs = tuple((int(a), int(b)) for a, b in zip(rows, cols))
    pairing = ProximalPairing(
        A=A,
        B=B,
        metric=metric,
        d_AB=d_AB,
        pairs=pairs,
        A0=tuple(sorted({a for a, _ in pairs})),
        B0=tuple(sorted({b for _, b in pairs})),
        eps_prox=eps_prox,
        distances=distances,
    )
    logger.debug(f"d(A, B) = {d_AB:g} with {len(pairs)} proximal pairs, |A0| = {len(pairing.A0)}")
    return pairing


def _pair_distance_matrices(pp: ProximalPairing) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    pair_a = np.array([a for a, _ in pp.pairs], dtype=int)
    pair_b = np.array([b for _, b in pp.pairs], dtype=int)
    da = pairwise_distances(pp.A.coords[pair_a], pp.A.coords[pair_a], pp.metric)
    db = pairwise_distances(pp.B.coords[pair_b], pp.B.coords[pair_b], pp.metric)
    return pair_a, pair_b, da, db


def _quadruple_witness(pp: ProximalPairing, i: int, j: int, da: float, db: float, relation: str) -> Witness:
    (x1, y1), (x2, y2) = pp.pairs[i], pp.pairs[j]
    return Witness(
        description=f"d(x1, x2) = {da:g} {relation} d(y1, y2) = {db:g}",
        a_indices=[x1, x2],
        b_indices=[y1, y2],
        points=[list(pp.A[x1]), list(pp.A[x2]), list(pp.B[y1]), list(pp.B[y2])],
        values=[da, db],
    )


def check_weak_P(pp: ProximalPairing, tol: float = config_env.EPS_PROX) -> PropertyReport:
    """
    Weak P-property: d(x1, y1) = d(x2, y2) = d(A, B) implies d(x1, x2) <= d(y1, y2).

    Returns:
        PropertyReport: With the violating quadruples (x1, x2, y1, y2) as witnesses.
    """
    _, _, da, db = _pair_distance_matrices(pp)
    bad = np.argwhere(da > db + tol)
    witnesses = [_quadruple_witness(pp, i, j, da[i, j], db[i, j], ">") for i, j in bad[:MAX_WITNESSES]]
    return PropertyReport(name="weak_P", holds=not bad.size, checked=da.size, witnesses=witnesses)


def check_P(pp: ProximalPairing, tol: float = config_env.EPS_PROX) -> PropertyReport:
    """
    P-property: d(x1, y1) = d(x2, y2) = d(A, B) implies d(x1, x2) = d(y1, y2).
    """
    _, _, da, db = _pair_distance_matrices(pp)
    bad = np.argwhere(np.abs(da - db) > tol)
    witnesses = [_quadruple_witness(pp, i, j, da[i, j], db[i, j], "!=") for i, j in bad[:MAX_WITNESSES]]
    return PropertyReport(name="P", holds=not bad.size, checked=da.size, witnesses=witnesses)


def check_alpha_proximal_admissible(
    F: MultiMap, alpha: AlphaMap, pp: ProximalPairing, eps_prox: float = config_env.EPS_PROX
) -> PropertyReport:
    """
    Alpha-proximal admissibility over every (x1, x2, u1, u2, y1, y2).

    alpha(x1, x2) >= 1, y1 in F x1, y2 in F x2, d(u1, y1) = d(u2, y2) = d(A, B)
    must imply alpha(u1, u2) >= 1.

    Args:
        F (MultiMap): The map, total on A.
        alpha (AlphaMap): The gate.
        pp (ProximalPairing): Pairing of (A, B).
        eps_prox (float): Tolerance of the proximity equalities.

    Returns:
        PropertyReport: With (x1, x2, u1, u2) and the alpha values as witnesses.

    Raises:
        MappingError: If F is not total or sends a point to the empty set.
    """
    F.check_against(len(pp.A), len(pp.B))
    n = len(pp.A)
    gate = alpha.matrix(n)
    proximal = np.abs(pp.distances - pp.d_AB) <= eps_prox
    # partners[x] = {u : d(u, y) = d(A, B) for some y in F x}, in set order
    partners = [tuple(np.flatnonzero(proximal[:, list(F.image(x))].any(axis=1))) for x in range(n)]
    checked = 0
    witnesses: list[Witness] = []
    for x1, x2 in product(range(n), repeat=2):
        if gate[x1, x2] < 1:
            continue
        for u1, u2 in product(partners[x1], partners[x2]):
            checked += 1
            if gate[u1, u2] < 1 and len(witnesses) < MAX_WITNESSES:
                witnesses.append(
                    Witness(
                        description=f"alpha(x1, x2) = {gate[x1, x2]:g} >= 1 but alpha(u1, u2) = {gate[u1, u2]:g} < 1",
                        a_indices=[x1, x2, int(u1), int(u2)],
                        points=[list(pp.A[i]) for i in (x1, x2, u1, u2)],
                        values=[float(gate[x1, x2]), float(gate[u1, u2])],
                    )
                )
    return PropertyReport(name="alpha_proximal_admissible", holds=not witnesses, checked=checked, witnesses=witnesses)


def check_range_condition(F: MultiMap, pp: ProximalPairing) -> PropertyReport:
    """Range condition: F x lies in B0 for every x in A0."""
    b0 = set(pp.B0)
    witnesses = [
        Witness(
            description=f"B[{b}] in F(A[{a}]) is not in B0",
            a_indices=[a],
            b_indices=[b],
            points=[list(pp.A[a]), list(pp.B[b])],
        )
        for a in pp.A0
        for b in F.image(a)
        if b not in b0
    ]
    checked = sum(len(F.image(a)) for a in pp.A0)
    return PropertyReport(name="range_condition", holds=not witnesses, checked=checked, witnesses=witnesses)
