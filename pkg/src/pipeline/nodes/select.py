"""
Stage 1: Select Node
Sprint: S7

Resolves the requested id or glob against the check registry.
An unknown id is a pipeline error, not an exception.
"""

from __future__ import annotations

import logging
from typing import Any

from src.checks.registry import resolve
from src.errors import UnknownCheckError

logger = logging.getLogger(__name__)


def select_node(state: dict[str, Any]) -> dict[str, Any]:
    """
    Input state keys:  pattern
    Output state keys: selected, pipeline_error (on unknown id)
    """
    pattern = state.get("pattern", "*")
    try:
        selected = resolve(pattern)
    except UnknownCheckError:
        logger.warning("select_node: no check matches '%s'", pattern)
        return {"selected": [], "pipeline_error": f"unknown check id: {pattern}"}
    logger.debug("select_node: '%s' → %d checks", pattern, len(selected))
    return {"selected": selected}
