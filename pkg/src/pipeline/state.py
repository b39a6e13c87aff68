"""
LangGraph check-run state definition.

CheckRunState is the single TypedDict that flows through the four
stages:  select → execute → audit → output

Every node receives the full state and returns a partial dict with
only the keys it modified; LangGraph merges these.
"""

from __future__ import annotations

from typing import Any, Optional
from typing_extensions import TypedDict

from src.models.schemas import Report


class CheckRunState(TypedDict, total=False):
    """
    Shared state passed between the check-run nodes.

    All fields are optional (total=False) because each node only
    populates the fields it owns. Read upstream fields with .get().
    """

    # ------------------------------------------------------------------
    # Input (set by the caller before graph.invoke())
    # ------------------------------------------------------------------
    pattern: str
    """Check id or glob, e.g. 'B-p2-over-p' or 'L-contracting-*'."""

    seed: Optional[int]
    """Sampling seed override. None means settings.seed (WITTFORGE_SEED)."""

    run_id: str
    """Unique id of this run, shared by every audit entry it writes."""

    start_time_ms: int
    """Unix timestamp in ms when the run was invoked."""

    # ------------------------------------------------------------------
    # Stage 1: select
    # ------------------------------------------------------------------
    selected: list[str]
    """Registry ids matching the pattern, sorted."""

    # ------------------------------------------------------------------
    # Stage 2: execute
    # ------------------------------------------------------------------
    reports: list[Report]
    """One Report per selected id, in id order."""

    effective_seed: int
    """The seed the checks actually ran with."""

    # ------------------------------------------------------------------
    # Stage 3: audit
    # ------------------------------------------------------------------
    audit_written: bool
    """True if every audit entry was appended to the JSONL log."""

    # ------------------------------------------------------------------
    # Stage 4: output
    # ------------------------------------------------------------------
    final_output: Optional[dict[str, Any]]
    """JSON-ready run summary; None if the run failed before executing."""

    exit_status: int
    """0 when every report passed, 1 on any fail/error, 2 on a pipeline error."""

    duration_ms: int

    # ------------------------------------------------------------------
    # Cross-cutting: error handling
    # ------------------------------------------------------------------
    pipeline_error: Optional[str]
    """
    Set by a node that cannot continue (e.g. an unknown check id).
    Later nodes skip their work; audit and output still run.
    """
