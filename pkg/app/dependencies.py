"""
Application dependencies.

This module provides the service container the CLI commands use to obtain
their services.
"""

from functools import lru_cache

from app.config.cfg import Settings, get_settings
from app.core.logging import get_logger
from app.services.factor import FactorService
from app.services.middle4 import Middle4Service
from app.services.necklace import NecklaceService
from app.services.scd import ScdService

logger = get_logger(__name__)


class ServiceContainer:
    """
    Container for application services with lazy loading.

    Services are created on first access and shared afterwards, so the SCD
    service and the factor service see the same necklace fixtures.
    """

    def __init__(self, settings: Settings):
        self.settings = settings
        self._services: dict[str, object] = {}

    def _get(self, name: str, factory):
        if name not in self._services:
            logger.debug("Creating service '%s'", name)
            self._services[name] = factory()
        return self._services[name]

    @property
    def necklace_service(self) -> NecklaceService:
        return self._get("necklace", lambda: NecklaceService(self.settings))

    @property
    def scd_service(self) -> ScdService:
        return self._get("scd", lambda: ScdService(self.settings, self.necklace_service))

    @property
    def factor_service(self) -> FactorService:
        return self._get("factor", lambda: FactorService(self.settings, self.scd_service))

    @property
    def middle4_service(self) -> Middle4Service:
        return self._get("middle4", lambda: Middle4Service(self.settings))


@lru_cache()
def get_service_container() -> ServiceContainer:
    """
    Get the shared service container.

    Returns:
        ServiceContainer: Container built from the current settings.
    """
    return ServiceContainer(get_settings())
