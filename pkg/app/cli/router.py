"""
CLI router configuration.

This is the central place where all sub-commands are registered on the root
application.
"""

import typer

from app.cli import factor, middle4, necklace, scd


def register_commands(cli: typer.Typer) -> typer.Typer:
    cli.command("scd")(scd.scd)
    cli.command("disjoint")(scd.disjoint)
    cli.command("factor")(factor.factor)
    cli.command("middle4")(middle4.middle4)
    cli.command("necklace-search")(necklace.necklace_search)
    return cli
