"""
Domain types of the boundary value problem -x'' = f(t, x), x(0) = x(1) = 0.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from src.config.settings.base import config_env
from src.utilities.constants import ErrorMessages
from src.utilities.messages.exceptions.errors import BvpError


class RhsKind(str, Enum):
    CONSTANT = "constant"
    SIN = "sin"
    AFFINE = "affine"
    SCALED_SIN = "scaled_sin"


class ForcingTerm(str, Enum):
    ZERO = "zero"
    ONE = "one"
    LINEAR = "linear"
    SINE = "sine"

    def evaluate(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if self is ForcingTerm.ZERO:
            return np.zeros_like(t)
        if self is ForcingTerm.ONE:
            return np.ones_like(t)
        if self is ForcingTerm.LINEAR:
            return t.copy()
        return np.sin(np.pi * t)


class Quadrature(str, Enum):
    SIMPSON = "SIMPSON"
    TRAPEZOID = "TRAPEZOID"


@dataclass(frozen=True)
class RhsSpec:
    """
    A right-hand side f(t, x) from the catalog.

    Attributes:
        kind (RhsKind): Catalog entry.
        constant (float): c of `constant:c`, or the additive forcing of `sin:c`.
        coefficient (float): a of `affine:a:g`, or mu of `scaled_sin:mu`.
        forcing (ForcingTerm): g of `affine:a:g`.
    """

    kind: RhsKind
    constant: float = 0.0
    coefficient: float = 0.0
    forcing: ForcingTerm = ForcingTerm.ZERO

    def __post_init__(self):
        if not (np.isfinite(self.constant) and np.isfinite(self.coefficient)):
            raise BvpError(ErrorMessages.RHS_UNKNOWN.value.format(self.describe()))
        bound = self.lipschitz_bound
        if bound > 1:
            raise BvpError(ErrorMessages.RHS_LIPSCHITZ.value.format(self.describe(), bound))

    @property
    def lipschitz_bound(self) -> float:
        """Lipschitz constant of x -> f(t, x), uniform in t."""
        if self.kind is RhsKind.CONSTANT:
            return 0.0
        if self.kind is RhsKind.SIN:
            return 1.0
        return abs(self.coefficient)

    def evaluate(self, t: np.ndarray, x: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        x = np.asarray(x, dtype=float)
        if self.kind is RhsKind.CONSTANT:
            return np.full_like(x, self.constant)
        if self.kind is RhsKind.SIN:
            return np.sin(x) + self.constant
        if self.kind is RhsKind.AFFINE:
            return self.coefficient * x + self.forcing.evaluate(t)
        return self.coefficient * np.sin(x)

    def describe(self) -> str:
        if self.kind is RhsKind.CONSTANT:
            return f"constant:{self.constant:g}"
        if self.kind is RhsKind.SIN:
            return "sin" if self.constant == 0 else f"sin:{self.constant:g}"
        if self.kind is RhsKind.AFFINE:
            return f"affine:{self.coefficient:g}:{self.forcing.value}"
        return f"scaled_sin:{self.coefficient:g}"


@dataclass(frozen=True)
class BvpProblem:
    """
    A discretized boundary value problem on the uniform grid t_i = i / n.

    Attributes:
        rhs (RhsSpec): Right-hand side f.
        n (int): Number of grid intervals.
        quadrature (Quadrature): Rule used for the kernel integrals.
        eps_fix (float): Stop when the sup-norm Picard step drops to this value.
        max_iter (int): Iteration cap.
    """

    rhs: RhsSpec
    n: int = config_env.BVP_N
    quadrature: Quadrature = Quadrature(config_env.BVP_QUADRATURE)
    eps_fix: float = config_env.BVP_EPS_FIX
    max_iter: int = config_env.BVP_MAX_ITER

    def __post_init__(self):
        if self.n < 2:
            raise BvpError(ErrorMessages.GRID_TOO_SMALL.value.format(self.n))
        if self.quadrature is Quadrature.SIMPSON and self.n % 2:
            raise BvpError(ErrorMessages.SIMPSON_ODD_GRID.value.format(self.n))

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.n + 1)

    @property
    def h(self) -> float:
        return 1.0 / self.n


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Nodal values x(t_i) on the grid t_i = i / n."""

    values: np.ndarray
    t: np.ndarray = field(repr=False)

    @classmethod
    def on(cls, problem: BvpProblem, values) -> "GridFunction":
        values = np.asarray(values, dtype=float)
        if values.shape != (problem.n + 1,):
            raise BvpError(ErrorMessages.GRID_MISMATCH.value.format(values.size, problem.n + 1))
        return cls(values=values, t=problem.nodes)

    @classmethod
    def zeros(cls, problem: BvpProblem) -> "GridFunction":
        return cls.on(problem, np.zeros(problem.n + 1))

    def sup_distance(self, other: "GridFunction") -> float:
        return float(np.max(np.abs(self.values - other.values)))
