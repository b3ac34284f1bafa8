from typing import Optional

from pydantic import BaseModel, Field

from src.models.schemas.report import ContractionAudit


class BvpReport(BaseModel):
    """
    Result of a Picard run on -x'' = f(t, x), x(0) = x(1) = 0.

    Attributes:
        tool_version (str): Version of the toolkit.
        rhs (str): Right-hand side in catalog syntax.
        n (int): Number of grid intervals.
        quadrature (str): Quadrature rule of the kernel integrals.
        eps_fix (float): Stopping tolerance on the sup-norm step.
        iterations (int): Picard iterations performed.
        converged (bool): Whether the step dropped to eps_fix.
        history (list[float]): Sup-norm step of every iteration.
        step_ratios (list[float]): Ratios of consecutive steps.
        max_residual (float): Max interior finite-difference residual of the solution.
        lipschitz_estimate (Optional[float]): Sampled Lipschitz constant of the discrete operator.
        audit (Optional[ContractionAudit]): Contraction audit of the operator with Theta = e^t.
        t (list[float]): Grid nodes.
        x (list[float]): Solution values.
    """

    tool_version: str
    rhs: str
    n: int
    quadrature: str
    eps_fix: float
    iterations: int
    converged: bool
    history: list[float] = Field(default_factory=list)
    step_ratios: list[float] = Field(default_factory=list)
    max_residual: Optional[float] = None
    lipschitz_estimate: Optional[float] = None
    audit: Optional[ContractionAudit] = None
    t: list[float] = Field(default_factory=list)
    x: list[float] = Field(default_factory=list)
