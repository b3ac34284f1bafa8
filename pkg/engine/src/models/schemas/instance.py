"""
Schema of the JSON instance file.

A and B entries are either explicit points or segment samplers
{"from": p, "to": q, "step": h}, expanded deterministically at load time.
F maps A-indices (as JSON object keys) to lists of B-indices; the indices refer to
the expanded, deduplicated point lists.
"""

from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.config.settings.base import config_env
from src.models.domain.geometry import MetricKind
from src.models.domain.theta import ThetaFamily

FORMAT_VERSION = 1


class MetricEntry(BaseModel):
    kind: MetricKind
    table: Optional[list[list[float]]] = None

    @model_validator(mode="after")
    def table_matches_kind(self) -> "MetricEntry":
        if self.kind is MetricKind.TABLE and self.table is None:
            raise ValueError("metric kind TABLE requires a table")
        if self.kind is not MetricKind.TABLE and self.table is not None:
            raise ValueError(f"metric kind {self.kind.value} does not take a table")
        return self


class SegmentSampler(BaseModel):
    """
    Segment from `from` to `to`, sampled with spacing at most `step`, endpoints included.
    """

    model_config = ConfigDict(populate_by_name=True)

    start: list[float] = Field(..., alias="from", min_length=1)
    end: list[float] = Field(..., alias="to", min_length=1)
    step: float = Field(..., gt=0)
    label: Optional[str] = None


PointEntry = Union[list[float], SegmentSampler]


class AlphaEntry(BaseModel):
    constant: Optional[float] = Field(None, ge=0)
    table: Optional[list[list[float]]] = None

    @model_validator(mode="after")
    def exactly_one(self) -> "AlphaEntry":
        if (self.constant is None) == (self.table is None):
            raise ValueError("alpha needs exactly one of 'constant' or 'table'")
        return self


class ThetaEntry(BaseModel):
    family: ThetaFamily
    base: Optional[float] = Field(None, gt=1)

    @model_validator(mode="after")
    def base_matches_family(self) -> "ThetaEntry":
        if self.family is ThetaFamily.POW_BASE and self.base is None:
            raise ValueError("family POW_BASE requires a base > 1")
        return self


class ParamsEntry(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    k: float = Field(..., gt=0, lt=1, description="Contraction exponent")
    lam: float = Field(0.0, ge=0, alias="lambda", description="Weight of the D(y, Fx) term")


class SeedsEntry(BaseModel):
    x0: int = Field(..., ge=0)
    x1: int = Field(..., ge=0)
    y0: int = Field(..., ge=0)


class TolerancesEntry(BaseModel):
    eps_dup: float = Field(default_factory=lambda: config_env.EPS_DUP, ge=0)
    eps_prox: float = Field(default_factory=lambda: config_env.EPS_PROX, ge=0)
    eps_stop: float = Field(default_factory=lambda: config_env.EPS_STOP, ge=0)
    eps_step: float = Field(default_factory=lambda: config_env.EPS_STEP, ge=0)
    max_iter: int = Field(default_factory=lambda: config_env.MAX_ITER, ge=1)


class InstanceFile(BaseModel):
    """
    A finite best proximity instance as stored on disk.

    Attributes:
        version (int): Format version.
        metric (MetricEntry): Metric kind and, for TABLE, the distance table.
        dim (int): Dimension of every point (1 for TABLE, whose points are indices).
        A, B (list[PointEntry]): Points and segment samplers.
        F (dict[int, list[int]]): Images of the multivalued map.
        alpha (AlphaEntry): Constant or table gate.
        theta (ThetaEntry): Theta family and parameters.
        params (ParamsEntry): k and lambda.
        seeds (Optional[SeedsEntry]): Starting indices of the iteration.
        tolerances (TolerancesEntry): Solver tolerances.
        assumptions (list[str]): Hypotheses recorded but not checked.
    """

    version: int = Field(FORMAT_VERSION, ge=1)
    metric: MetricEntry
    dim: int = Field(..., ge=1)
    A: list[PointEntry] = Field(..., min_length=1)
    B: list[PointEntry] = Field(..., min_length=1)
    F: dict[int, list[int]]
    alpha: AlphaEntry = Field(default_factory=lambda: AlphaEntry(constant=1.0))
    theta: ThetaEntry
    params: ParamsEntry
    seeds: Optional[SeedsEntry] = None
    tolerances: TolerancesEntry = Field(default_factory=TolerancesEntry)
    assumptions: list[str] = Field(default_factory=list)

    @field_validator("F")
    @classmethod
    def images_nonempty(cls, value: dict[int, list[int]]) -> dict[int, list[int]]:
        for key, image in value.items():
            if not image:
                raise ValueError(f"F[{key}] is empty")
        return value

    @model_validator(mode="after")
    def dimensions_agree(self) -> "InstanceFile":
        if self.metric.kind is MetricKind.TABLE and self.dim != 1:
            raise ValueError("TABLE instances use dim = 1 (points are table indices)")
        for set_name in ("A", "B"):
            for i, entry in enumerate(getattr(self, set_name)):
                coords = [entry] if isinstance(entry, list) else [entry.start, entry.end]
                for point in coords:
                    if len(point) != self.dim:
                        raise ValueError(f"{set_name}[{i}] has dimension {len(point)}, expected {self.dim}")
        return self
