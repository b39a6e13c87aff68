"""
LangGraph check-run graph.
Sprint: S7

Wires the check-run stages into a StateGraph:
    select → [output if nothing selected] → execute → audit → output
"""

from __future__ import annotations

import logging
import time
from typing import Any, Optional
from uuid import uuid4

from langgraph.graph import END, StateGraph

from src.pipeline.nodes.audit import audit_node
from src.pipeline.nodes.execute import execute_node
from src.pipeline.nodes.output import output_node
from src.pipeline.nodes.select import select_node
from src.pipeline.state import CheckRunState

logger = logging.getLogger(__name__)


def route_after_select(state: dict[str, Any]) -> str:
    """Skip execution and audit when the pattern selected nothing."""
    if state.get("pipeline_error") or not state.get("selected"):
        return "output"
    return "execute"


def build_graph():
    """Build and compile the check-run graph."""
    sg = StateGraph(CheckRunState)

    sg.add_node("select", select_node)
    sg.add_node("execute", execute_node)
    sg.add_node("audit", audit_node)
    sg.add_node("output", output_node)

    sg.set_entry_point("select")
    sg.add_conditional_edges(
        "select",
        route_after_select,
        {"execute": "execute", "output": "output"},
    )
    sg.add_edge("execute", "audit")
    sg.add_edge("audit", "output")
    sg.add_edge("output", END)

    return sg.compile()


def run_checks(pattern: str, seed: Optional[int] = None, run_id: Optional[str] = None) -> dict[str, Any]:
    """
    Convenience function: run every check matching `pattern`.

    Args:
        pattern: Check id or glob.
        seed: Sampling seed; defaults to settings.seed.
        run_id: Optional id for the audit entries. Auto-generated if not provided.

    Returns:
        Final state dict (reports, final_output, exit_status, audit_written, ...).
    """
    graph = build_graph()
    initial_state: dict[str, Any] = {
        "pattern": pattern,
        "seed": seed,
        "run_id": run_id or str(uuid4()),
        "start_time_ms": int(time.time() * 1000),
    }
    return graph.invoke(initial_state)
