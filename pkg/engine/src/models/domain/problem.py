from dataclasses import dataclass, field, replace
from typing import Any, NamedTuple, Optional

from src.config.settings.base import config_env
from src.models.domain.geometry import Metric, PointSet
from src.models.domain.mapping import AlphaMap, MultiMap
from src.models.domain.theta import ContractionParams, ThetaSpec


class Seeds(NamedTuple):
    """Starting data of the iteration: indices x0, x1 into A and y0 into B."""

    x0: int
    x1: int
    y0: int


@dataclass(frozen=True)
class SolverLimits:
    """
    Tolerances and limits shared by the structural checks and the solver.

    Attributes:
        eps_dup (float): Point equality tolerance (membership tests).
        eps_prox (float): Tolerance of the equality d(x, y) = d(A, B).
        eps_stop (float): Stop when D(x_n, F x_n) - d(A, B) drops to this value.
        eps_step (float): Stop when d(x_n, x_n+1) drops to this value.
        max_iter (int): Iteration cap.
    """

    eps_dup: float = config_env.EPS_DUP
    eps_prox: float = config_env.EPS_PROX
    eps_stop: float = config_env.EPS_STOP
    eps_step: float = config_env.EPS_STEP
    max_iter: int = config_env.MAX_ITER

    def override(self, **changes: Any) -> "SolverLimits":
        return replace(self, **{name: value for name, value in changes.items() if value is not None})


@dataclass(frozen=True)
class ProximityProblem:
    """
    A complete finite instance: the pair (A, B), the map F and the contraction data.

    Attributes:
        A, B (PointSet): The two sets; in fixed-point mode both are the same object.
        metric (Metric): Distance on the ambient space.
        mapping (MultiMap): F: A -> nonempty subsets of B.
        theta (ThetaSpec): Theta from the catalog.
        params (ContractionParams): k, lambda and alpha.
        seeds (Optional[Seeds]): Declared starting data, if any.
        limits (SolverLimits): Tolerances declared by the instance.
        assumptions (tuple[str, ...]): Hypotheses recorded but not machine-checked.
        document (Optional[Any]): The validated instance document the problem was built from.
    """

    A: PointSet
    B: PointSet
    metric: Metric
    mapping: MultiMap
    theta: ThetaSpec
    params: ContractionParams
    seeds: Optional[Seeds] = None
    limits: SolverLimits = field(default_factory=SolverLimits)
    assumptions: tuple[str, ...] = ()
    document: Optional[Any] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.mapping.check_against(len(self.A), len(self.B))
        self.params.alpha.check_size(len(self.A))

    @property
    def alpha(self) -> AlphaMap:
        return self.params.alpha

    @property
    def is_self_map(self) -> bool:
        return self.A is self.B

    def with_params(self, k: Optional[float] = None, lam: Optional[float] = None) -> "ProximityProblem":
        params = ContractionParams(
            k=self.params.k if k is None else k,
            lam=self.params.lam if lam is None else lam,
            alpha=self.params.alpha,
        )
        return replace(self, params=params)
