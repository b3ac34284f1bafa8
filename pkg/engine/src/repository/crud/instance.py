"""
Reading, writing and fingerprinting instance files.

- hashlib: SHA-256 digest of the canonical JSON.
- json: Parsing with line/column diagnostics and canonical output.
- pathlib: File access.
- ValidationError: Pydantic schema failures, reported with their field path.
- logger: Application logging configuration.
- InstanceFile: Schema of the instance file.
- build_point_set, sample_segment: Expansion of point entries into point sets.
"""

import hashlib
import json
import pathlib
from typing import Union

from pydantic import ValidationError

from src.config.settings.logger_config import logger
from src.models.domain.geometry import Metric, PointSet
from src.models.domain.mapping import AlphaMap, MultiMap
from src.models.domain.problem import ProximityProblem, Seeds, SolverLimits
from src.models.domain.theta import ContractionParams, ThetaSpec
from src.models.schemas.instance import InstanceFile, PointEntry
from src.solvers.metric_core import build_point_set, sample_segment
from src.utilities.constants import ErrorMessages
from src.utilities.messages.exceptions.errors import (
    BppToolkitError,
    InstanceParseError,
    InstanceValidationError,
)

PathLike = Union[str, pathlib.Path]


def parse_instance(text: str, source: str = "<string>") -> InstanceFile:
    """
    Parse and schema-validate instance JSON.

    Args:
        text (str): The JSON document.
        source (str): Name used in error messages.

    Returns:
        InstanceFile: The validated document.

    Raises:
        InstanceParseError: On malformed JSON, with line and column.
        InstanceValidationError: On schema violations, with the field path.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        logger.error(f"Error parsing instance {source}: {e}")
        raise InstanceParseError(
            ErrorMessages.INSTANCE_PARSE.value.format(source, e.msg, e.lineno, e.colno), e.lineno, e.colno
        ) from e
    try:
        return InstanceFile.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"]) or "<root>"
        logger.error(f"Error validating instance {source}: {field}: {first['msg']}")
        raise InstanceValidationError(
            ErrorMessages.INSTANCE_VALIDATION.value.format(source, field, first["msg"]), field
        ) from e


def _expand(entries: list[PointEntry]) -> list[tuple[float, ...]]:
    points: list[tuple[float, ...]] = []
    for entry in entries:
        if isinstance(entry, list):
            points.append(tuple(entry))
        else:
            points.extend(sample_segment(entry.start, entry.end, entry.step))
    return points


def _range_error(field: str, index: int, size: int) -> InstanceValidationError:
    return InstanceValidationError(ErrorMessages.INSTANCE_RANGE.value.format(field, index, size), field)


def build_problem(doc: InstanceFile) -> ProximityProblem:
    """
    Expand a validated document into a ProximityProblem.

    Identical A and B entries yield one shared point set (fixed-point mode).

    Raises:
        InstanceValidationError: On out-of-range indices or a non-total map.
        BppToolkitError: On invalid tables, duplicate points or Theta parameters.
    """
    eps_dup = doc.tolerances.eps_dup
    A = build_point_set(_expand(doc.A), "A", eps_dup)
    B = A if doc.A == doc.B else build_point_set(_expand(doc.B), "B", eps_dup)
    n_a, n_b = len(A), len(B)

    for key, image in doc.F.items():
        if not 0 <= key < n_a:
            raise _range_error("F", key, n_a)
        for j in image:
            if not 0 <= j < n_b:
                raise _range_error(f"F[{key}]", j, n_b)
    missing = [i for i in range(n_a) if i not in doc.F]
    if missing:
        raise InstanceValidationError(ErrorMessages.MAP_NOT_TOTAL.value.format(len(doc.F), n_a), f"F[{missing[0]}]")

    if doc.seeds is not None:
        for name, value, size in (("x0", doc.seeds.x0, n_a), ("x1", doc.seeds.x1, n_a), ("y0", doc.seeds.y0, n_b)):
            if value >= size:
                raise _range_error(f"seeds.{name}", value, size)

    if doc.alpha.table is not None:
        alpha = AlphaMap.from_table(doc.alpha.table)
        if alpha.table.shape != (n_a, n_a):
            raise InstanceValidationError(
                ErrorMessages.ALPHA_SHAPE.value.format(n_a, alpha.table.shape), "alpha.table"
            )
    else:
        alpha = AlphaMap.constant_map(doc.alpha.constant)

    tol = doc.tolerances
    return ProximityProblem(
        A=A,
        B=B,
        metric=Metric(doc.metric.kind, doc.metric.table),
        mapping=MultiMap.from_lists([doc.F[i] for i in range(n_a)]),
        theta=ThetaSpec(doc.theta.family, doc.theta.base),
        params=ContractionParams(k=doc.params.k, lam=doc.params.lam, alpha=alpha),
        seeds=Seeds(doc.seeds.x0, doc.seeds.x1, doc.seeds.y0) if doc.seeds else None,
        limits=SolverLimits(
            eps_dup=tol.eps_dup,
            eps_prox=tol.eps_prox,
            eps_stop=tol.eps_stop,
            eps_step=tol.eps_step,
            max_iter=tol.max_iter,
        ),
        assumptions=tuple(doc.assumptions),
        document=doc,
    )


def load_instance(path: PathLike) -> ProximityProblem:
    """
    Load, validate and expand an instance file.

    Args:
        path (PathLike): Location of the JSON file.

    Returns:
        ProximityProblem: The instance, holding its validated document.

    Raises:
        InstanceValidationError: If the file is missing or fails validation.
        InstanceParseError: If the file is not valid JSON.
    """
    path = pathlib.Path(path)
    if not path.is_file():
        logger.error(f"Error loading instance: {path} not found")
        raise InstanceValidationError(ErrorMessages.INSTANCE_NOT_FOUND.value.format(path))
    doc = parse_instance(path.read_text(encoding="utf-8"), str(path))
    try:
        problem = build_problem(doc)
    except BppToolkitError as e:
        logger.error(f"Error building instance {path}: {e}")
        raise
    logger.info(f"Instance loaded from {path}: |A| = {len(problem.A)}, |B| = {len(problem.B)}")
    return problem


def canonical_json(doc: InstanceFile) -> str:
    return json.dumps(doc.model_dump(mode="json", by_alias=True, exclude_none=True), indent=2) + "\n"


def instance_digest(doc: InstanceFile) -> str:
    """SHA-256 of the canonical JSON form; stable across save/load cycles."""
    return hashlib.sha256(canonical_json(doc).encode("utf-8")).hexdigest()


def save_instance(doc: InstanceFile, path: PathLike) -> pathlib.Path:
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(canonical_json(doc), encoding="utf-8")
    logger.info(f"Instance written to {path}")
    return path


def point_set_entries(points: PointSet) -> list[list[float]]:
    return [list(point) for point in points.points]
