"""
Result models for command output and verification reports.

This module defines Pydantic models for everything the CLI prints in
``--json`` mode, so structured output has one schema per record type.
"""

from typing import Any, Literal

from pydantic import BaseModel, Field


class CheckResult(BaseModel):
    """Outcome of a single verification check."""

    name: str = Field(..., description="Check name")
    passed: bool = Field(..., description="Whether the check passed")
    witness: str | None = Field(None, description="Offending vertex, chain or value when the check failed")


class VerificationReport(BaseModel):
    """A named group of checks."""

    subject: str = Field(..., description="What was verified")
    passed: bool = Field(..., description="True iff every check passed")
    checks: list[CheckResult] = Field(default_factory=list, description="Individual check results")

    def render(self) -> str:
        """Plain-text rendering, one line per check."""
        lines = [f"{self.subject}: {'PASS' if self.passed else 'FAIL'}"]
        for check in self.checks:
            line = f"  {check.name}: {'pass' if check.passed else 'FAIL'}"
            if check.witness:
                line += f" ({check.witness})"
            lines.append(line)
        return "\n".join(lines)


class DisjointnessReport(BaseModel):
    """Pairwise edge-disjointness of several chain decompositions."""

    n: int = Field(..., description="Cube dimension")
    kinds: list[str] = Field(..., description="Decomposition kinds in matrix order")
    matrix: list[list[bool]] = Field(..., description="Entry [a][b] is True iff kinds a and b are edge-disjoint")
    passed: bool = Field(..., description="True iff all pairs are edge-disjoint")


class CensusRecord(BaseModel):
    """Cycle census of one cycle factor."""

    n: int = Field(..., description="Half-dimension; the cube is Q_{2n+1}")
    ell: int = Field(..., description="Number of level pairs in the band")
    cycles: int = Field(..., description="Number of cycles")
    histogram: dict[int, int] = Field(..., description="Cycle length -> number of cycles")

    def render(self) -> str:
        lengths = ",".join(str(length) for length, count in sorted(self.histogram.items()) for _ in range(count))
        return f"{self.cycles} cycles: {lengths}"


class OrbitCensus(BaseModel):
    """Cycle count of the middle-four-levels factor and its tree-count oracle."""

    n: int = Field(..., description="Half-dimension")
    orbits: int = Field(..., description="Number of rotation orbits, equal to the factor's cycle count")
    trivalent_trees: int | None = Field(None, description="Independent count of plane trivalent trees")


class SearchReport(BaseModel):
    """Outcome of a necklace-graph search."""

    n: int = Field(..., description="Necklace length")
    k: int = Field(..., description="Number of decompositions sought")
    status: Literal["found", "impossible", "budget-exceeded"] = Field(..., description="Search outcome")
    nodes: int = Field(..., description="Search nodes expanded")
    fixtures: list[str] = Field(default_factory=list, description="Fixture files written")


class CommandResult(BaseModel):
    """Envelope printed by ``--json``."""

    command: str = Field(..., description="Sub-command name")
    params: dict[str, Any] = Field(default_factory=dict, description="Invocation parameters")
    results: Any = Field(None, description="Command-specific payload")


class ErrorResponse(BaseModel):
    """Standard error record."""

    error: str = Field(..., description="Error type")
    message: str = Field(..., description="Error message")
    exit_code: int = Field(..., description="Process exit code")
    run_id: str | None = Field(None, description="Run ID for tracking")
