"""
``necklace-search`` sub-command.
"""

from typing import Annotated

import typer

from app.cli.output import command_scope, emit
from app.cli.scd import JsonOption
from app.core.exceptions import EXIT_BUDGET_EXCEEDED, BudgetExceededError
from app.dependencies import get_service_container
from app.models.responses import SearchReport


def necklace_search(
    n: Annotated[int, typer.Argument(help="Necklace length.")],
    k: Annotated[int, typer.Argument(help="Number of instance-disjoint SCDs.")],
    budget: Annotated[int | None, typer.Option("--budget", help="Search node budget.")] = None,
    json_output: JsonOption = False,
) -> None:
    """Search the necklace graph N_N for K instance-disjoint SCDs."""
    params = {"n": n, "k": k, "budget": budget}
    with command_scope("necklace-search", json_output, **params):
        service = get_service_container().necklace_service
        try:
            report, found = service.search(n, k, budget)
        except BudgetExceededError as exc:
            report = SearchReport(n=n, k=k, status="budget-exceeded", nodes=exc.nodes)
            emit("necklace-search", params, report.model_dump(), json_output, _summary(report))
            raise typer.Exit(EXIT_BUDGET_EXCEEDED) from exc
        blocks = [scd.to_text() for scd in found]
        emit("necklace-search", params, report.model_dump(), json_output, "\n\n".join([_summary(report), *blocks]))


def _summary(report: SearchReport) -> str:
    line = f"N_{report.n} k={report.k}: {report.status} after {report.nodes} nodes"
    for path in report.fixtures:
        line += f"\nfixture: {path}"
    return line
