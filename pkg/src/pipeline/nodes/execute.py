"""
Stage 2: Execute Node
Sprint: S7

Runs the selected checks in id order. A check that raises is recorded as
an `error` report and the run continues with the next id.
"""

from __future__ import annotations

import logging
from typing import Any

from src.checks.registry import run_check
from src.checks.tally import current_seed, error_report, use_seed
from src.models.schemas import Report

logger = logging.getLogger(__name__)


def execute_node(state: dict[str, Any]) -> dict[str, Any]:
    """
    Input state keys:  selected, seed
    Output state keys: reports, effective_seed
    """
    if state.get("pipeline_error"):
        return {"reports": []}

    seed = state.get("seed")
    reports: list[Report] = []
    with use_seed(seed):
        effective = current_seed()
        for check_id in sorted(state.get("selected", [])):
            try:
                reports.append(run_check(check_id, seed=effective))
            except Exception as exc:  # noqa: BLE001
                logger.error("execute_node: check %s raised: %s", check_id, exc)
                reports.append(error_report(check_id, exc, effective))

    return {"reports": reports, "effective_seed": effective}
