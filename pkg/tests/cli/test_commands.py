"""
Tests for the sub-commands, run through the root application.
"""

import json

import pytest

from app.core.exceptions import EXIT_BUDGET_EXCEEDED, EXIT_USAGE, EXIT_VERIFICATION_FAILED
from app.main import app


@pytest.fixture
def invoke(runner, container):
    def run(*args: str):
        return runner.invoke(app, list(args))

    return run


class TestScdCommand:
    """Test the ``scd`` command."""

    def test_d0_of_q1(self, invoke):
        result = invoke("scd", "d0", "1")
        assert result.exit_code == 0
        assert result.output.strip() == "0 1"

    def test_d1_with_verification(self, invoke):
        result = invoke("scd", "d1", "6", "--verify")
        lines = result.output.splitlines()

        assert result.exit_code == 0
        assert "d1 of Q_6: PASS" in lines
        chain_lines = [line for line in lines if line and not line.startswith(("d1 ", "  "))]
        assert len(chain_lines) == 20

    def test_asymmetric_union_fails_verification(self, invoke):
        result = invoke("scd", "lex:1,1,1,1,1,1,1", "7", "--verify")
        assert result.exit_code == EXIT_VERIFICATION_FAILED
        assert "symmetry: FAIL" in result.output

    def test_out_file(self, invoke, tmp_path):
        out = tmp_path / "d0-q4.txt"
        result = invoke("scd", "d0", "4", "--out", str(out))

        assert result.exit_code == 0
        assert len(out.read_text(encoding="utf-8").splitlines()) == 6

    def test_json_output(self, invoke):
        result = invoke("scd", "d0", "3", "--json")
        payload = json.loads(result.stdout)

        assert payload["command"] == "scd"
        assert payload["params"]["n"] == 3
        assert ["000", "100", "110", "111"] in payload["results"]["chains"]

    def test_unknown_kind(self, invoke):
        result = invoke("scd", "d9", "4")
        assert result.exit_code == EXIT_USAGE
        assert "Unknown SCD kind" in result.output

    def test_unknown_kind_as_json(self, invoke):
        result = invoke("scd", "d9", "4", "--json")
        payload = json.loads(result.stdout)

        assert result.exit_code == EXIT_USAGE
        assert payload["error"] == "NotFoundError"
        assert payload["exit_code"] == EXIT_USAGE
        assert payload["run_id"]


class TestDisjointCommand:
    """Test the ``disjoint`` command."""

    def test_repeated_kind(self, invoke):
        result = invoke("disjoint", "3", "d0", "d0")
        assert result.exit_code == EXIT_VERIFICATION_FAILED
        assert "d0 d0: SHARED EDGES" in result.output

    def test_four_disjoint_scds(self, invoke):
        result = invoke("disjoint", "6", "d0", "d0c", "d1", "d1c")
        assert result.exit_code == 0
        assert result.output.splitlines()[-1] == "all pairwise edge-disjoint"
        assert len(result.output.splitlines()) == 7


class TestFactorCommand:
    """Test the ``factor`` command."""

    def test_census(self, invoke):
        result = invoke("factor", "2", "--ell", "2", "--census")
        assert result.exit_code == 0
        assert result.output.strip() == "3 cycles: 4,4,22"

    def test_product_pair(self, invoke):
        result = invoke("factor", "3", "--ell", "4", "--scds", "product")
        assert result.exit_code == 0
        assert result.output.startswith("12 cycles: ")

    def test_emit(self, invoke):
        result = invoke("factor", "1", "--emit")
        assert result.exit_code == 0
        assert len(result.output.splitlines()) == 1

    def test_table(self, invoke):
        result = invoke("factor", "3", "--table", "--scds", "product")
        assert result.exit_code == 0
        assert result.output.splitlines() == ["1: 1 2", "2: 2 3 4", "3: 3 8 11 12"]

    @pytest.mark.slow
    def test_d0_table_entry(self, invoke):
        result = invoke("factor", "8", "--ell", "1")
        assert result.exit_code == 0
        assert result.output.startswith("146 cycles: ")

    def test_exclusive_modes(self, invoke):
        result = invoke("factor", "2", "--census", "--emit")
        assert result.exit_code == EXIT_USAGE

    def test_band_outside_the_cube(self, invoke):
        result = invoke("factor", "2", "--ell", "4")
        assert result.exit_code == EXIT_USAGE


class TestMiddle4Command:
    """Test the ``middle4`` command."""

    def test_orbits(self, invoke):
        result = invoke("middle4", "4", "--orbits")
        assert result.exit_code == 0
        assert result.output.strip() == "4"

    def test_emit(self, invoke):
        result = invoke("middle4", "2", "--emit")
        assert result.exit_code == 0
        assert len(result.output.splitlines()) == 30

    def test_emit_closed(self, invoke):
        lines = invoke("middle4", "2", "--emit", "--repeat-first").output.splitlines()
        assert len(lines) == 31
        assert lines[0] == lines[-1]

    def test_check(self, invoke):
        result = invoke("middle4", "3", "--check")
        assert result.exit_code == 0
        assert "hamilton n=3: PASS" in result.output

    def test_needs_one_mode(self, invoke):
        assert invoke("middle4", "3").exit_code == EXIT_USAGE


class TestNecklaceSearchCommand:
    """Test the ``necklace-search`` command."""

    def test_impossible(self, invoke):
        result = invoke("necklace-search", "5", "4")
        assert result.exit_code == 0
        assert result.output.startswith("N_5 k=4: impossible")

    def test_found_writes_fixture(self, invoke, test_settings):
        result = invoke("necklace-search", "5", "3")

        assert result.exit_code == 0
        assert "N_5 k=3: found" in result.output
        assert (test_settings.fixtures_dir / "necklace-n5-k3.txt").exists()

    def test_budget_exceeded(self, invoke):
        result = invoke("necklace-search", "5", "3", "--budget", "1", "--json")
        payload = json.loads(result.stdout)

        assert result.exit_code == EXIT_BUDGET_EXCEEDED
        assert payload["results"]["status"] == "budget-exceeded"
        assert payload["results"]["nodes"] == 2
