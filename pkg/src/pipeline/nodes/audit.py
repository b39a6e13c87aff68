"""
Stage 3: Audit Node
Sprint: S7

Appends one CheckAuditEntry per report to the JSONL audit log.
The file is opened in append mode only; entries are never rewritten.

Log location: settings.audit_log_path (WITTFORGE_AUDIT_LOG_PATH).
Default: logs/checks.jsonl

Graceful degradation: if the write fails (disk full, permissions),
audit_written is False and the error is logged; the run continues.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any

from src.config.loader import load_settings
from src.models.schemas import CheckAuditEntry

logger = logging.getLogger(__name__)


def audit_node(state: dict[str, Any]) -> dict[str, Any]:
    """
    Input state keys:  run_id, reports
    Output state keys: audit_written
    """
    reports = state.get("reports", [])
    if not reports:
        return {"audit_written": False}

    run_id = state.get("run_id", "")
    log_path = Path(load_settings().audit_log_path)
    entries = [CheckAuditEntry.from_report(r, run_id) for r in reports]

    try:
        log_path.parent.mkdir(parents=True, exist_ok=True)
        with open(log_path, "a", encoding="utf-8") as f:
            for entry in entries:
                f.write(entry.model_dump_json() + "\n")
        logger.debug("audit_node: wrote %d entries for run %s to %s", len(entries), run_id, log_path)
        return {"audit_written": True}

    except Exception as exc:  # noqa: BLE001
        logger.error("audit_node: failed to write audit log '%s': %s", log_path, exc)
        return {"audit_written": False}
