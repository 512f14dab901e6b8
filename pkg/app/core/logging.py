"""
Logging configuration for the application.

This module provides centralized logging setup with text or JSON formatting
chosen from settings. Logs go to stderr; stdout is reserved for command output.
"""

import contextvars
import json
import logging
import sys
from datetime import datetime, timezone

from app.config import get_settings

# Set per CLI command by app.core.middleware.track_command
run_id_var: contextvars.ContextVar[str | None] = contextvars.ContextVar("run_id", default=None)

_RESERVED = {
    "name",
    "msg",
    "args",
    "levelname",
    "levelno",
    "pathname",
    "filename",
    "module",
    "lineno",
    "funcName",
    "created",
    "msecs",
    "relativeCreated",
    "thread",
    "threadName",
    "processName",
    "process",
    "taskName",
    "getMessage",
    "exc_info",
    "exc_text",
    "stack_info",
    "run_id",
}


class RunContextFormatter(logging.Formatter):
    """Formatter that attaches the current run ID to every record."""

    def format(self, record: logging.LogRecord) -> str:
        record.run_id = run_id_var.get()
        return super().format(record)


class TextFormatter(RunContextFormatter):
    """Text formatter that shows the run ID only when one is set."""

    def format(self, record: logging.LogRecord) -> str:
        super().format(record)
        timestamp = datetime.fromtimestamp(record.created).strftime("%Y-%m-%d %H:%M:%S")
        if getattr(record, "run_id", None):
            return f"{timestamp} - {record.name} - {record.levelname} - [{record.run_id}] - {record.getMessage()}"
        return f"{timestamp} - {record.name} - {record.levelname} - {record.getMessage()}"


class JSONFormatter(RunContextFormatter):
    """JSON formatter for machine-collected logs."""

    def format(self, record: logging.LogRecord) -> str:
        super().format(record)
        log_entry = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "module": record.module,
        }
        if getattr(record, "run_id", None):
            log_entry["run_id"] = record.run_id
        if record.exc_info:
            log_entry["exception"] = self.formatException(record.exc_info)
        for key, value in record.__dict__.items():
            if key not in _RESERVED:
                log_entry[key] = value
        return json.dumps(log_entry, default=str)


def setup_logging() -> None:
    """
    Configure application logging.

    Installs a single stderr handler on the root logger with the formatter
    and level taken from the current settings.
    """
    settings = get_settings()
    formatter = JSONFormatter() if str(settings.log_format).lower() == "json" else TextFormatter()

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)

    root_logger = logging.getLogger()
    root_logger.setLevel(getattr(logging, str(settings.log_level).upper()))
    root_logger.handlers.clear()
    root_logger.addHandler(console_handler)

    logging.getLogger(__name__).debug("Logging configured: level=%s format=%s", settings.log_level, settings.log_format)


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger instance with the specified name.

    Args:
        name: Logger name, typically __name__ of the calling module.

    Returns:
        logging.Logger: Configured logger instance.
    """
    return logging.getLogger(name)
