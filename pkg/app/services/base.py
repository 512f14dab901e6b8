"""
Base service class.

Services orchestrate the ``app.cube`` library for the CLI: they parse user
input, apply settings and verify results before handing them back.
"""

from app.config import Settings
from app.core.exceptions import ValidationError, VerificationError
from app.core.logging import get_logger
from app.models.responses import VerificationReport


class BaseService:
    """
    Base class for stateless services.

    Services are created once by the container and reused.
    """

    def __init__(self, settings: Settings):
        self.settings = settings
        self.logger = get_logger(self.__class__.__name__)

    def check_dimension(self, dimension: int) -> int:
        """
        Raises:
            ValidationError: If the cube dimension is not in ``[1, max_dimension]``.
        """
        if not 1 <= dimension <= self.settings.max_dimension:
            raise ValidationError(f"Dimension must lie in [1, {self.settings.max_dimension}], got {dimension}")
        return dimension

    def require(self, report: VerificationReport) -> VerificationReport:
        """
        Raise on a failed report when ``verify_outputs`` is enabled.

        Raises:
            VerificationError: If verification is enabled and the report failed.
        """
        if self.settings.verify_outputs and not report.passed:
            self.logger.warning("Verification failed: %s", report.subject)
            raise VerificationError(f"{report.subject} failed verification", report=report)
        return report
