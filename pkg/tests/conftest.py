"""Shared pytest fixtures."""

from __future__ import annotations

import pytest


@pytest.fixture(autouse=True)
def audit_log(tmp_path, monkeypatch):
    """Keep check-run audit entries out of the repository's logs/ directory."""
    log_file = tmp_path / "checks.jsonl"
    monkeypatch.setenv("WITTFORGE_AUDIT_LOG_PATH", str(log_file))
    return log_file
