from qftbell.constants import EXIT_NUMERICAL, EXIT_VALIDATION


class QftBellError(Exception):
    """Base class for every error the library raises on purpose."""

    exit_code = EXIT_NUMERICAL


class ConfigError(QftBellError, ValueError):
    """A run configuration or settings record failed validation."""

    exit_code = EXIT_VALIDATION


class DomainError(QftBellError, ValueError):
    """An argument lies outside the domain of the operation."""

    exit_code = EXIT_VALIDATION


class LightConeSingularity(DomainError):
    """A two-point function was evaluated exactly on the light cone."""


class NumericalFailure(QftBellError, ArithmeticError):
    """
    A quadrature or sampling routine did not reach its tolerance.

    Args:
        message (str): What failed.
        achieved_error (float, optional): The error estimate that was reached.
        diagnostics (dict, optional): Extra context for the report.
    """

    exit_code = EXIT_NUMERICAL

    def __init__(self, message: str, achieved_error: float = None, diagnostics: dict = None):
        super().__init__(message)
        self.achieved_error = achieved_error
        self.diagnostics = diagnostics or {}
