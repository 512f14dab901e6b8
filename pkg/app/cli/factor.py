"""
``factor`` sub-command.
"""

from typing import Annotated

import typer

from app.cli.output import command_scope, emit
from app.cli.scd import JsonOption
from app.core.exceptions import ValidationError
from app.cube.factor import TableKind, format_table_row
from app.dependencies import get_service_container


def factor(
    n: Annotated[int, typer.Argument(help="Half-dimension: the cube is Q_{2N+1}.")],
    ell: Annotated[int, typer.Option("--ell", help="Use the middle 2*ell levels.")] = 1,
    scds: Annotated[str, typer.Option("--scds", help="Two kinds such as d0,d0c, or d0 / product.")] = "d0,d0c",
    census: Annotated[bool, typer.Option("--census", help="Print cycle count and lengths (default).")] = False,
    emit_cycles: Annotated[bool, typer.Option("--emit", help="Print every cycle.")] = False,
    table: Annotated[bool, typer.Option("--table", help="Print table rows 1..N for every ell.")] = False,
    json_output: JsonOption = False,
) -> None:
    """Cycle factor of the middle levels of Q_{2N+1} from two edge-disjoint SCDs."""
    params = {"n": n, "ell": ell, "scds": scds, "census": census, "emit": emit_cycles, "table": table}
    with command_scope("factor", json_output, **params):
        if census + emit_cycles + table > 1:
            raise ValidationError("Choose one of --census, --emit and --table")
        service = get_service_container().factor_service

        if table:
            kind = TableKind.PRODUCT if scds == TableKind.PRODUCT else TableKind.D0
            if scds not in (TableKind.D0, TableKind.PRODUCT, "d0,d0c"):
                raise ValidationError(f"Tables exist for d0 and product, not {scds!r}")
            rows = service.table(kind, n)
            text = "\n".join(format_table_row(row, counts) for row, counts in rows.items())
            emit("factor", params, {"kind": str(kind), "rows": rows}, json_output, text)
            return

        if emit_cycles:
            result = service.factor(n, ell, scds)
            cycles = result.to_text().splitlines()
            emit("factor", params, {"cycles": cycles}, json_output, result.to_text())
            return

        record = service.census(n, ell, scds)
        emit("factor", params, record.model_dump(), json_output, record.render())
