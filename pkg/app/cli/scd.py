"""
``scd`` and ``disjoint`` sub-commands.
"""

from pathlib import Path
from typing import Annotated

import typer

from app.cli.output import command_scope, emit
from app.core.exceptions import EXIT_VERIFICATION_FAILED
from app.dependencies import get_service_container

JsonOption = Annotated[bool, typer.Option("--json", help="Print a JSON record instead of text.")]


def scd(
    kind: Annotated[
        str, typer.Argument(help="d0, d0c, d1, d1c, lex:<i0,i1,...>, product:<m>, necklace:<m>, family:<m>")
    ],
    n: Annotated[int, typer.Argument(help="Cube dimension.")],
    verify: Annotated[bool, typer.Option("--verify", help="Append the verification report.")] = False,
    out: Annotated[Path | None, typer.Option("--out", help="Write the chains to this file.")] = None,
    json_output: JsonOption = False,
) -> None:
    """Print a symmetric chain decomposition of Q_N, one chain per line."""
    params = {"kind": kind, "n": n, "verify": verify, "out": str(out) if out else None}
    with command_scope("scd", json_output, **params):
        service = get_service_container().scd_service
        d = service.build(kind, n)
        text = d.to_text()
        if out is not None:
            out.write_text(text + "\n", encoding="utf-8")
        report = service.verify(d, kind) if verify else None

        results = {
            "chains": len(d) if out is not None else [str(chain).split() for chain in d.sorted_chains()],
            "report": report.model_dump() if report else None,
        }
        lines = [] if out is not None else [text]
        if report:
            lines.append(report.render())
        emit("scd", params, results, json_output, "\n".join(lines))
        if report and not report.passed:
            raise typer.Exit(EXIT_VERIFICATION_FAILED)


def disjoint(
    n: Annotated[int, typer.Argument(help="Cube dimension.")],
    kinds: Annotated[list[str], typer.Argument(help="Two or more SCD kinds.")],
    json_output: JsonOption = False,
) -> None:
    """Check that SCDs of Q_N are pairwise edge-disjoint."""
    params = {"n": n, "kinds": kinds}
    with command_scope("disjoint", json_output, **params):
        report = get_service_container().scd_service.disjointness(n, kinds)
        lines = []
        for a in range(len(kinds)):
            for b in range(a + 1, len(kinds)):
                state = "disjoint" if report.matrix[a][b] else "SHARED EDGES"
                lines.append(f"{kinds[a]} {kinds[b]}: {state}")
        lines.append("all pairwise edge-disjoint" if report.passed else "not pairwise edge-disjoint")
        emit("disjoint", params, report.model_dump(), json_output, "\n".join(lines))
        if not report.passed:
            raise typer.Exit(EXIT_VERIFICATION_FAILED)
