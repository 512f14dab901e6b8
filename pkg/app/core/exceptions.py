"""
Custom exceptions for the application.

Every exception carries the process exit code the CLI reports for it;
``app.cli.output.command_scope`` is the single place that turns them into exits.
"""

from app.models.responses import ErrorResponse, VerificationReport

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET_EXCEEDED = 3


class AppException(Exception):
    """Base application exception."""

    def __init__(self, message: str, exit_code: int = EXIT_VERIFICATION_FAILED):
        self.message = message
        self.exit_code = exit_code
        super().__init__(self.message)

    def to_response(self, run_id: str | None = None) -> ErrorResponse:
        return ErrorResponse(
            error=self.__class__.__name__,
            message=self.message,
            exit_code=self.exit_code,
            run_id=run_id,
        )


class ValidationError(AppException, ValueError):
    """Invalid arguments or malformed input."""

    def __init__(self, message: str):
        super().__init__(message, EXIT_USAGE)


class NotFoundError(AppException):
    """Requested fixture or object does not exist."""

    def __init__(self, message: str = "Resource not found"):
        super().__init__(message, EXIT_USAGE)


class VerificationError(AppException):
    """A constructed object failed verification."""

    def __init__(self, message: str, report: VerificationReport | None = None):
        super().__init__(message, EXIT_VERIFICATION_FAILED)
        self.report = report


class BudgetExceededError(AppException):
    """A search ran out of its node budget before deciding."""

    def __init__(self, message: str, nodes: int = 0):
        super().__init__(message, EXIT_BUDGET_EXCEEDED)
        self.nodes = nodes
