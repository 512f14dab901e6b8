"""
Tests for command tracking.
"""

import logging

import pytest

from app.core.logging import run_id_var
from app.core.middleware import track_command


class TestTrackCommand:
    """Test run IDs and timing logs around commands."""

    def test_sets_and_resets_run_id(self):
        with track_command("scd", n=4) as run_id:
            assert run_id_var.get() == run_id
            assert len(run_id) == 36
        assert run_id_var.get() is None

    def test_run_ids_differ(self):
        with track_command("scd") as first:
            pass
        with track_command("scd") as second:
            pass
        assert first != second

    def test_logs_completion(self, caplog):
        with caplog.at_level(logging.INFO, logger="app.core.middleware"):
            with track_command("factor", n=2):
                pass
        assert "Command started: factor" in caplog.text
        assert "Command completed: factor" in caplog.text

    def test_failure_is_logged_and_reraised(self, caplog):
        with caplog.at_level(logging.INFO, logger="app.core.middleware"):
            with pytest.raises(RuntimeError):
                with track_command("middle4"):
                    raise RuntimeError("boom")
        assert "Command failed: middle4" in caplog.text
        assert run_id_var.get() is None
