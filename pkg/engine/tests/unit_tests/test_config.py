import pytest

from src.config.settings.base import Config
from src.utilities.constants import ExitCode
from src.utilities.messages.exceptions.errors import (
    BppToolkitError,
    BvpError,
    ConvergenceError,
    HypothesisViolation,
    InstanceParseError,
    InstanceValidationError,
    MetricError,
    SeedError,
)


def test_defaults_without_environment(monkeypatch) -> None:
    for name in ("BPP_EPS_PROX", "BPP_MAX_ITER", "BPP_BVP_N", "BPP_BVP_QUADRATURE"):
        monkeypatch.delenv(name, raising=False)
    config = Config()
    assert config.EPS_PROX == 1e-9
    assert config.MAX_ITER == 1_000_000
    assert config.BVP_N == 128
    assert config.BVP_QUADRATURE == "SIMPSON"


def test_environment_overrides(monkeypatch) -> None:
    monkeypatch.setenv("BPP_MAX_ITER", "50")
    monkeypatch.setenv("BPP_BVP_QUADRATURE", "trapezoid")
    monkeypatch.setenv("BPP_LOG_LEVEL", "debug")
    config = Config()
    assert config.MAX_ITER == 50
    assert config.BVP_QUADRATURE == "TRAPEZOID"
    assert config.LOG_LEVEL == "DEBUG"


@pytest.mark.parametrize(
    "name, value",
    [("BPP_EPS_STOP", "-1"), ("BPP_MAX_ITER", "0"), ("BPP_BVP_N", "1"), ("BPP_BVP_QUADRATURE", "GAUSS")],
)
def test_invalid_environment_is_rejected(monkeypatch, name, value) -> None:
    monkeypatch.setenv(name, value)
    with pytest.raises(ValueError):
        Config()


def test_exit_codes_follow_the_exception_type() -> None:
    assert MetricError("x").exit_code is ExitCode.INPUT_ERROR
    assert BvpError("x").exit_code is ExitCode.INPUT_ERROR
    assert HypothesisViolation("x").exit_code is ExitCode.HYPOTHESIS_VIOLATION
    assert SeedError("x").exit_code is ExitCode.HYPOTHESIS_VIOLATION
    assert ConvergenceError("x", [1.0]).exit_code is ExitCode.NOT_CONVERGED
    assert issubclass(SeedError, BppToolkitError)


def test_error_location_attributes() -> None:
    parse = InstanceParseError("bad", 3, 7)
    assert (parse.line, parse.column) == (3, 7)
    assert InstanceValidationError("bad", "params.k").field == "params.k"
    assert ConvergenceError("slow").history == []
