"""
Command-line application entry point.

This module builds the root Typer application, installs logging and provides
``run`` for the console script.
"""

import sys
from typing import Annotated

import typer

from app.cli.router import register_commands
from app.config.cfg import settings
from app.core.exceptions import EXIT_VERIFICATION_FAILED
from app.core.logging import get_logger, setup_logging

# Setup logging
setup_logging()
logger = get_logger(__name__)


def _version(value: bool) -> None:
    if value:
        typer.echo(f"{settings.app_name} {settings.app_version}")
        raise typer.Exit()


def create_app() -> typer.Typer:
    """
    Create the root application with every sub-command registered.

    Returns:
        typer.Typer: Configured application.
    """
    cli = typer.Typer(
        name=settings.app_name,
        help="Symmetric chain decompositions, middle-level cycle factors and middle-four-levels Hamilton cycles.",
        no_args_is_help=True,
        add_completion=False,
        pretty_exceptions_enable=False,
    )

    @cli.callback()
    def main(
        version: Annotated[
            bool, typer.Option("--version", callback=_version, is_eager=True, help="Show the version and exit.")
        ] = False,
    ) -> None:
        """Symmetric chain decompositions and Hamilton cycles in the middle levels of the cube."""

    return register_commands(cli)


# Create the application instance
app = create_app()


def run() -> None:
    """Console-script entry point; unexpected errors are logged and exit with status 1."""
    try:
        app()
    except Exception:
        logger.exception("Unexpected error")
        sys.exit(EXIT_VERIFICATION_FAILED)


if __name__ == "__main__":
    run()
