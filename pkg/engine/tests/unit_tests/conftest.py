import pathlib

import numpy as np
import pytest
from click.testing import CliRunner

from src.models.domain.geometry import Metric, MetricKind, PointSet
from src.models.domain.problem import ProximityProblem
from src.repository.crud.instance import load_instance

INSTANCES = pathlib.Path(__file__).resolve().parents[2] / "instances"

WEAK_P_TABLE = [
    [0.0, 5.0, 1.0, 4.0],
    [5.0, 0.0, 4.0, 1.0],
    [1.0, 4.0, 0.0, 3.0],
    [4.0, 1.0, 3.0, 0.0],
]


@pytest.fixture
def reference_path() -> pathlib.Path:
    return INSTANCES / "reference_taxicab.json"


@pytest.fixture
def halving_path() -> pathlib.Path:
    return INSTANCES / "halving_chain.json"


@pytest.fixture
def reference_problem(reference_path) -> ProximityProblem:
    return load_instance(reference_path)


@pytest.fixture
def halving_problem(halving_path) -> ProximityProblem:
    return load_instance(halving_path)


@pytest.fixture
def taxicab() -> Metric:
    return Metric(MetricKind.L1)


@pytest.fixture
def weak_p_table_sets() -> tuple[PointSet, PointSet, Metric]:
    """Abstract 4-point space where the proximal pairs (0, 2), (1, 3) break the weak P-property."""
    metric = Metric(MetricKind.TABLE, np.array(WEAK_P_TABLE))
    return PointSet([[0.0], [1.0]], label="A"), PointSet([[2.0], [3.0]], label="B"), metric


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()
