"""
Exception hierarchy of the toolkit.

Every exception carries the exit code the CLI reports for it, so the command layer
can render any failure through `ErrorResponse` without knowing its type.
"""

from typing import Optional

from src.utilities.constants import ExitCode


class BppToolkitError(Exception):
    """
    Base class for all toolkit failures.

    Attributes:
        exit_code (ExitCode): Process exit code used by the CLI.
    """

    exit_code: ExitCode = ExitCode.INPUT_ERROR


class MetricError(BppToolkitError):
    """Dimension mismatch, empty set, duplicate point or invalid distance table."""


class MappingError(BppToolkitError):
    """Multivalued map or alpha table inconsistent with its point sets."""


class ThetaDomainError(BppToolkitError):
    """Theta evaluated outside its domain or built with invalid parameters."""


class HypothesisViolation(BppToolkitError):
    exit_code = ExitCode.HYPOTHESIS_VIOLATION


class SeedError(HypothesisViolation):
    """Seeds (x0, x1, y0) do not satisfy the starting conditions of the iteration."""


class InstanceParseError(BppToolkitError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(message)
        self.line = line
        self.column = column


class InstanceValidationError(BppToolkitError):
    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(message)
        self.field = field


class BvpError(BppToolkitError):
    """Invalid boundary value problem configuration or kernel input."""


class ConvergenceError(BppToolkitError):
    exit_code = ExitCode.NOT_CONVERGED

    def __init__(self, message: str, history: Optional[list[float]] = None):
        super().__init__(message)
        self.history = history or []
