"""
Output and error handling shared by all sub-commands.

Plain text goes to stdout and errors to stderr; with ``--json`` every result
and every error is a single JSON document on stdout.
"""

from collections.abc import Iterator
from contextlib import contextmanager
from typing import Any

import typer

from app.core.exceptions import AppException, VerificationError
from app.core.middleware import track_command
from app.models.responses import CommandResult


def emit(command: str, params: dict[str, Any], results: Any, json_output: bool, text: str | None = None) -> None:
    """Print ``text`` in text mode, the ``CommandResult`` envelope in JSON mode."""
    if json_output:
        typer.echo(CommandResult(command=command, params=params, results=results).model_dump_json(indent=2))
    elif text:
        typer.echo(text)


def report_error(exc: AppException, json_output: bool, run_id: str | None = None) -> None:
    if json_output:
        typer.echo(exc.to_response(run_id).model_dump_json(indent=2))
        return
    if isinstance(exc, VerificationError) and exc.report is not None:
        typer.echo(exc.report.render())
    typer.echo(f"Error: {exc.message}", err=True)


@contextmanager
def command_scope(name: str, json_output: bool, **params: Any) -> Iterator[str]:
    """
    Track a command and turn application errors into exit codes.

    Raises:
        typer.Exit: With the exception's exit code after printing it.
    """
    run_id: str | None = None
    try:
        with track_command(name, **params) as run_id:
            yield run_id
    except AppException as exc:
        report_error(exc, json_output, run_id)
        raise typer.Exit(exc.exit_code) from exc
