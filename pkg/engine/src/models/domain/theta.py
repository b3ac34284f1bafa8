import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from src.models.domain.mapping import AlphaMap
from src.utilities.constants import ErrorMessages
from src.utilities.messages.exceptions.errors import ThetaDomainError


class ThetaFamily(str, Enum):
    EXP = "EXP"
    POW_BASE = "POW_BASE"
    EXP_SQRT = "EXP_SQRT"


@dataclass(frozen=True)
class ThetaSpec:
    """
    A member of the closed Theta catalog: e^t, b^t (b > 1) or e^sqrt(t).

    Comparisons are carried out on log Theta, which each family has in closed form,
    so that large distances never overflow.

    Attributes:
        family (ThetaFamily): Catalog entry.
        base (Optional[float]): Base b of the POW_BASE family.
    """

    family: ThetaFamily
    base: Optional[float] = None

    def __post_init__(self):
        if self.family is ThetaFamily.POW_BASE:
            if self.base is None or not self.base > 1 or not math.isfinite(self.base):
                raise ThetaDomainError(ErrorMessages.THETA_BASE.value.format(self.base))

    def log_value(self, t: float) -> float:
        """log Theta(t) for t >= 0; at t = 0 this is the limit value 0."""
        if self.family is ThetaFamily.EXP:
            return t
        if self.family is ThetaFamily.POW_BASE:
            return t * math.log(self.base)
        return math.sqrt(t)

    def inverse_from_log(self, log_v: float) -> float:
        """Theta^-1 applied to e^log_v."""
        if self.family is ThetaFamily.EXP:
            return log_v
        if self.family is ThetaFamily.POW_BASE:
            return log_v / math.log(self.base)
        return log_v * log_v

    def describe(self) -> str:
        if self.family is ThetaFamily.POW_BASE:
            return f"{self.base:g}^t"
        return {ThetaFamily.EXP: "e^t", ThetaFamily.EXP_SQRT: "e^sqrt(t)"}[self.family]


@dataclass(frozen=True)
class ContractionParams:
    """
    Constants of the almost Theta-contraction inequality.

    Attributes:
        k (float): Contraction exponent in (0, 1).
        lam (float): Weight lambda >= 0 of the D(y, Fx) term.
        alpha (AlphaMap): Gate alpha(x, y).
    """

    k: float
    lam: float = 0.0
    alpha: AlphaMap = field(default_factory=lambda: AlphaMap.constant_map(1.0))

    def __post_init__(self):
        if not 0 < self.k < 1 or not self.lam >= 0:
            raise ThetaDomainError(ErrorMessages.CONTRACTION_PARAMS.value.format(self.k, self.lam))
