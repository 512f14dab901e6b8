"""
``middle4`` sub-command.
"""

from typing import Annotated

import typer

from app.cli.output import command_scope, emit
from app.cli.scd import JsonOption
from app.core.exceptions import EXIT_VERIFICATION_FAILED, ValidationError, VerificationError
from app.dependencies import get_service_container


def middle4(
    n: Annotated[int, typer.Argument(help="Half-dimension: the cube is Q_{2N+1}.")],
    emit_cycle: Annotated[bool, typer.Option("--emit", help="Print the Hamilton cycle, one vertex per line.")] = False,
    check: Annotated[bool, typer.Option("--check", help="Run every structural check.")] = False,
    orbits: Annotated[bool, typer.Option("--orbits", help="Print the number of factor cycles.")] = False,
    repeat_first: Annotated[bool, typer.Option("--repeat-first", help="Close the emitted cycle.")] = False,
    json_output: JsonOption = False,
) -> None:
    """Hamilton cycle through the middle four levels of Q_{2N+1}."""
    params = {"n": n, "emit": emit_cycle, "check": check, "orbits": orbits, "repeat_first": repeat_first}
    with command_scope("middle4", json_output, **params):
        if emit_cycle + check + orbits != 1:
            raise ValidationError("Choose exactly one of --emit, --check and --orbits")
        service = get_service_container().middle4_service

        if emit_cycle:
            lines = service.hamilton_lines(n, repeat_first)
            emit("middle4", params, {"cycle": lines}, json_output, "\n".join(lines))
        elif check:
            reports = service.check(n)
            text = "\n".join(report.render() for report in reports)
            emit("middle4", params, [report.model_dump() for report in reports], json_output, text)
            if not all(report.passed for report in reports):
                raise typer.Exit(EXIT_VERIFICATION_FAILED)
        else:
            census = service.orbits(n)
            if census.trivalent_trees is not None and census.trivalent_trees != census.orbits:
                raise VerificationError(f"{census.orbits} orbits but {census.trivalent_trees} plane trivalent trees")
            emit("middle4", params, census.model_dump(), json_output, str(census.orbits))
