"""
Command tracking for the CLI.

Every command runs inside ``track_command``, which gives it a unique run ID
for log correlation and logs its timing.
"""

import time
import uuid
from collections.abc import Iterator
from contextlib import contextmanager

from app.core.logging import get_logger, run_id_var

logger = get_logger(__name__)


@contextmanager
def track_command(name: str, **params: object) -> Iterator[str]:
    """
    Run a command with a fresh run ID and timing logs.

    Args:
        name: Command name.
        **params: Parameters logged with the start message.

    Yields:
        str: The run ID.
    """
    run_id = str(uuid.uuid4())
    token = run_id_var.set(run_id)
    start_time = time.perf_counter()
    logger.info("Command started: %s %s", name, params)
    try:
        yield run_id
        logger.info("Command completed: %s [Time: %.3fs]", name, time.perf_counter() - start_time)
    except Exception:
        logger.info("Command failed: %s [Time: %.3fs]", name, time.perf_counter() - start_time)
        raise
    finally:
        run_id_var.reset(token)
