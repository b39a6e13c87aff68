"""
Stage 4: Output Node
Sprint: S7

Assembles the run summary and the exit status.

final_output carries deterministic report dicts only (no wall time), so
two runs with one seed serialize to the same bytes.
"""

from __future__ import annotations

import logging
import time
from collections import Counter
from typing import Any

logger = logging.getLogger(__name__)


def output_node(state: dict[str, Any]) -> dict[str, Any]:
    """
    Input state keys:  all upstream fields + start_time_ms
    Output state keys: final_output, exit_status, duration_ms
    """
    start_time_ms = state.get("start_time_ms", 0)
    now_ms = int(time.time() * 1000)
    duration_ms = max(0, now_ms - start_time_ms) if start_time_ms else 0

    if state.get("pipeline_error"):
        logger.warning("Check run failed: %s", state["pipeline_error"])
        return {"final_output": None, "exit_status": 2, "duration_ms": duration_ms}

    reports = state.get("reports", [])
    statuses = Counter(r.status for r in reports)
    final_output: dict[str, Any] = {
        "pattern": state.get("pattern", ""),
        "seed": state.get("effective_seed", 0),
        "summary": {s: statuses.get(s, 0) for s in ("pass", "fail", "error")},
        "reports": [r.deterministic_dict() for r in reports],
    }
    exit_status = 0 if statuses["pass"] == len(reports) else 1

    logger.info(
        "Check run complete: %d pass, %d fail, %d error in %dms",
        statuses["pass"], statuses["fail"], statuses["error"], duration_ms,
    )
    return {"final_output": final_output, "exit_status": exit_status, "duration_ms": duration_ms}
