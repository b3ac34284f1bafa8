"""
Report schemas produced by the structural checks, the Theta audits and the solver.

- Enum: Outcome labels of a solver run.
- Optional: Fields that are absent when a check constrains nothing.
- BaseModel, Field: Pydantic base class and field metadata.
"""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field

PointOut = list[float]


class Witness(BaseModel):
    """
    A concrete counterexample (or the extremal case) found by a structural check.

    Attributes:
        description (str): Human-readable statement of what the witness shows.
        a_indices (list[int]): Indices into A involved in the witness.
        b_indices (list[int]): Indices into B involved in the witness.
        points (list[PointOut]): The points behind the indices, in the same order.
        values (list[float]): Distances or alpha values that break the property.
    """

    description: str
    a_indices: list[int] = Field(default_factory=list)
    b_indices: list[int] = Field(default_factory=list)
    points: list[PointOut] = Field(default_factory=list)
    values: list[float] = Field(default_factory=list)


class PropertyReport(BaseModel):
    name: str = Field(..., description="Property that was checked")
    holds: bool
    checked: int = Field(0, description="Number of cases examined")
    witnesses: list[Witness] = Field(default_factory=list)


class PairingSummary(BaseModel):
    d_AB: float
    eps_prox: float
    A0: list[int]
    B0: list[int]
    A0_points: list[PointOut]
    B0_points: list[PointOut]
    pair_count: int


class ContractionSample(BaseModel):
    """
    One ordered pair (x, y) of the contraction audit.

    Attributes:
        x, y (int): Indices of the pair (points of A, or sample numbers for grid functions).
        alpha (float): alpha(x, y).
        H (float): H(Fx, Fy).
        d (float): d(x, y).
        D (float): D(y, Fx).
        lhs_log (float): log(alpha * Theta(H)).
        rhs_log (Optional[float]): log Theta(d + lambda * D), None when d + lambda * D = 0.
        required_k (Optional[float]): Smallest k this pair allows, None when it imposes nothing.
    """

    x: int
    y: int
    alpha: float
    H: float
    d: float
    D: float
    lhs_log: Optional[float] = None
    rhs_log: Optional[float] = None
    required_k: Optional[float] = None


class ContractionAudit(BaseModel):
    holds: bool
    k: float
    lam: float
    theta: str
    scope: str = Field("A0", description="Set of points whose ordered pairs were audited")
    k_min: Optional[float] = Field(None, description="Smallest feasible k; None when no pair constrains")
    worst_pair: Optional[tuple[int, int]] = None
    checked: int = 0
    samples: list[ContractionSample] = Field(default_factory=list)
    structural_violations: list[ContractionSample] = Field(default_factory=list)


class Theta3Estimate(BaseModel):
    k: float
    ratios: list[float]
    spread: float
    stable: bool
    estimate: Optional[float] = None


class ThetaConditionReport(BaseModel):
    """
    Numeric verdict on the three conditions a Theta function must meet.

    Attributes:
        theta (str): Theta in readable form.
        theta1 (bool): Strictly increasing on the sampled grid.
        theta2 (bool): Theta(t) tends to 1 exactly when t tends to 0 on the sampled grid.
        theta3 (bool): Some k on the grid gives a stable finite positive limit of (Theta(a) - 1) / a^k.
        best_k (Optional[float]): The k with the most stable ratios among those that pass.
        limit_estimate (Optional[float]): The limit estimated at best_k.
        vanishing (bool): The ratios decrease towards 0 for every k on the grid.
        estimates (list[Theta3Estimate]): Per-k ratio tails.
    """

    theta: str
    theta1: bool
    theta2: bool
    theta3: bool
    best_k: Optional[float] = None
    limit_estimate: Optional[float] = None
    vanishing: bool = False
    estimates: list[Theta3Estimate] = Field(default_factory=list)


class SolverOutcome(str, Enum):
    CONVERGED = "CONVERGED"
    MAX_ITER = "MAX_ITER"
    HYPOTHESIS_VIOLATION = "HYPOTHESIS_VIOLATION"
    STALLED = "STALLED"
    CYCLE = "CYCLE"


class TraceStep(BaseModel):
    """
    Step n of the proximal Picard run.

    x_n is the current iterate, y_n the image point chosen for it and x_next the
    partner of y_n in A0. The closing step of a converged run has no y_n or x_next.
    """

    n: int
    x_index: int
    x: PointOut
    gap: float
    y_index: Optional[int] = None
    y: Optional[PointOut] = None
    next_index: Optional[int] = None
    d_step: Optional[float] = Field(None, description="d(x_n, x_n+1)")
    d_y: Optional[float] = Field(None, description="d(y_n-1, y_n)")
    alpha_ok: Optional[bool] = None
    bound: Optional[float] = Field(None, description="Theta^-1(Theta(d(x0, x1))^(k^n))")
    relaxed_bound: Optional[float] = Field(None, description="Bound that keeps the lambda * d(A, B) term")


class IterationTrace(BaseModel):
    outcome: SolverOutcome
    detail: str = ""
    steps: list[TraceStep] = Field(default_factory=list)

    @property
    def moves(self) -> list[TraceStep]:
        return [step for step in self.steps if step.d_step is not None]

    def shrink_holds(self, tol: float = 1e-9) -> bool:
        """d(x_n, x_n+1) <= d(y_n-1, y_n) at every move."""
        return all(step.d_step <= step.d_y + tol for step in self.moves)

    def decay_holds(self, tol: float = 1e-9, relaxed: bool = False) -> bool:
        """d(x_n, x_n+1) stays under the Theta-decay bound at every move."""
        field_name = "relaxed_bound" if relaxed else "bound"
        return all(
            step.d_step <= getattr(step, field_name) * (1 + tol) + tol for step in self.moves
        )


class HypothesisReport(BaseModel):
    range_condition: PropertyReport
    weak_P: PropertyReport
    P: PropertyReport
    admissible: PropertyReport
    contraction: ContractionAudit
    contraction_full: ContractionAudit
    assumptions: list[str] = Field(default_factory=list)

    @property
    def certified(self) -> bool:
        """All machine-checkable hypotheses of the existence theorem hold."""
        return (
            self.range_condition.holds
            and self.weak_P.holds
            and self.admissible.holds
            and self.contraction.holds
        )

    def failed(self) -> list[str]:
        checks = (self.range_condition, self.weak_P, self.admissible)
        names = [check.name for check in checks if not check.holds]
        if not self.contraction.holds:
            names.append(f"contraction[{self.contraction.scope}]")
        return names


class BppResult(BaseModel):
    point: PointOut
    point_index: int
    gap: float
    certified: bool
    trace: IterationTrace
    hypotheses: Optional[HypothesisReport] = None

    @property
    def outcome(self) -> SolverOutcome:
        return self.trace.outcome


class UniquenessReport(BaseModel):
    condition_h: bool = Field(..., description="alpha >= 1 on every pair of best proximity points")
    unique_expected: bool
    contradiction: bool
    lambda_term: float = Field(0.0, description="Largest lambda * D(x2, F x1) over pairs of best proximity points")
    diagnostic: str = ""


class OracleReport(BaseModel):
    d_AB: float
    bpps: list[int] = Field(..., description="Indices into A of the best proximity points")
    bpp_points: list[PointOut]
    gaps: list[float] = Field(..., description="D(x, Fx) - d(A, B) for every x in A")

    @property
    def min_gap(self) -> float:
        return min(self.gaps)


class SetGeometry(BaseModel):
    d_AB: float
    attaining_pair: tuple[PointOut, PointOut]
    hausdorff: float
    directed_AB: float
    directed_BA: float
    sizes: tuple[int, int]


class RunReport(BaseModel):
    """
    Machine-readable summary of one CLI invocation on a finite instance.
    """

    tool_version: str
    command: str
    instance: Optional[str] = None
    instance_digest: Optional[str] = None
    metric: Optional[str] = None
    theta: Optional[str] = None
    tolerances: dict[str, float] = Field(default_factory=dict)
    geometry: Optional[SetGeometry] = None
    pairing: Optional[PairingSummary] = None
    hypotheses: Optional[HypothesisReport] = None
    theta_conditions: Optional[ThetaConditionReport] = None
    result: Optional[BppResult] = None
    oracle: Optional[OracleReport] = None
    oracle_match: Optional[bool] = None
    uniqueness: Optional[UniquenessReport] = None
    assumptions: list[str] = Field(default_factory=list)
