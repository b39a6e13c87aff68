"""
Sprint 7: audit_node Tests

Tests:
  - one CheckAuditEntry JSONL line per report
  - parent directory creation and append-only writes
  - audit_written=True on success, False on IO failure or nothing to write
  - entries carry run_id, status, counts and seed

Run:  PYTHONPATH=. .venv/Scripts/pytest tests/test_audit.py -v
"""

from __future__ import annotations

import json
from unittest.mock import patch

import pytest

from src.models.schemas import CheckAuditEntry, Report
from src.pipeline.graph import run_checks
from src.pipeline.nodes.audit import audit_node


def _state(*statuses: str) -> dict:
    reports = [
        Report(check_id=f"T-{i}", status=s, counts={"checked": 4, "failed": int(s == "fail")}, seed=9)
        for i, s in enumerate(statuses)
    ]
    return {"run_id": "run-123", "reports": reports}


def _lines(path):
    return [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines() if line.strip()]


# ---------------------------------------------------------------------------
# Return values
# ---------------------------------------------------------------------------


class TestReturnValues:

    def test_written_true_on_success(self):
        assert audit_node(_state("pass"))["audit_written"] is True

    def test_nothing_to_write(self, audit_log):
        assert audit_node({"run_id": "r", "reports": []})["audit_written"] is False
        assert not audit_log.exists()

    def test_io_failure_degrades(self):
        with patch("builtins.open", side_effect=PermissionError("read-only")):
            assert audit_node(_state("pass"))["audit_written"] is False


# ---------------------------------------------------------------------------
# File writing
# ---------------------------------------------------------------------------


class TestFileWriting:

    def test_one_line_per_report(self, audit_log):
        audit_node(_state("pass", "fail", "error"))
        assert len(_lines(audit_log)) == 3

    def test_creates_parent_directory(self, tmp_path, monkeypatch):
        log_file = tmp_path / "nested" / "logs" / "checks.jsonl"
        monkeypatch.setenv("WITTFORGE_AUDIT_LOG_PATH", str(log_file))
        audit_node(_state("pass"))
        assert log_file.exists()

    def test_appends(self, audit_log):
        audit_node(_state("pass"))
        audit_node(_state("pass", "pass"))
        assert len(_lines(audit_log)) == 3

    def test_entry_fields(self, audit_log):
        audit_node(_state("fail"))
        entry = CheckAuditEntry.model_validate(_lines(audit_log)[0])
        assert entry.run_id == "run-123"
        assert entry.check_id == "T-0"
        assert entry.status == "fail"
        assert entry.counts == {"checked": 4, "failed": 1}
        assert entry.seed == 9

    def test_distinct_audit_ids(self, audit_log):
        audit_node(_state("pass", "pass"))
        ids = [e["audit_id"] for e in _lines(audit_log)]
        assert len(set(ids)) == 2


class TestEndToEnd:

    def test_run_writes_entries(self, audit_log):
        state = run_checks("L-contracting-*", run_id="run-e2e")
        entries = _lines(audit_log)
        assert [e["check_id"] for e in entries] == ["L-contracting-1", "L-contracting-2"]
        assert {e["run_id"] for e in entries} == {"run-e2e"}
        assert state["audit_written"] is True

    def test_unknown_id_writes_nothing(self, audit_log):
        run_checks("nonexistent")
        assert not audit_log.exists()
