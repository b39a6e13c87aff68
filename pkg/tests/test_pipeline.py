"""
Sprint 7: Check-Run Pipeline Tests

Tests the check-run graph wiring, the select / execute / output nodes,
and end-to-end runs through run_checks().

Run:  PYTHONPATH=. .venv/Scripts/pytest tests/test_pipeline.py -v
"""

from __future__ import annotations

import json

import pytest
from deepdiff import DeepDiff

from src.checks import registry
from src.checks.registry import RegisteredCheck
from src.models.schemas import CheckDescriptor, Report
from src.pipeline.graph import build_graph, route_after_select, run_checks
from src.pipeline.nodes.execute import execute_node
from src.pipeline.nodes.output import output_node
from src.pipeline.nodes.select import select_node


def _report(check_id: str, status: str = "pass") -> Report:
    return Report(check_id=check_id, status=status, counts={"checked": 1, "failed": int(status != "pass")})


@pytest.fixture
def exploding_check(monkeypatch):
    def body(tally):
        raise ArithmeticError("boom")

    descriptor = CheckDescriptor(id="X-explodes", anchor="always raises", module="witt")
    monkeypatch.setitem(registry._REGISTRY, "X-explodes", RegisteredCheck(descriptor, body))
    return "X-explodes"


# ---------------------------------------------------------------------------
# Graph structure
# ---------------------------------------------------------------------------


class TestGraphStructure:

    def test_build_graph_returns_compiled(self):
        graph = build_graph()
        assert hasattr(graph, "invoke")

    def test_route_to_execute(self):
        assert route_after_select({"selected": ["B-p2-over-p"]}) == "execute"

    def test_route_to_output_on_error(self):
        assert route_after_select({"selected": [], "pipeline_error": "unknown check id: x"}) == "output"

    def test_route_to_output_when_empty(self):
        assert route_after_select({"selected": []}) == "output"


# ---------------------------------------------------------------------------
# Nodes
# ---------------------------------------------------------------------------


class TestSelectNode:

    def test_glob(self):
        assert select_node({"pattern": "L-contracting-*"})["selected"] == ["L-contracting-1", "L-contracting-2"]

    def test_unknown_sets_pipeline_error(self):
        result = select_node({"pattern": "nonexistent"})
        assert result["selected"] == []
        assert "nonexistent" in result["pipeline_error"]


class TestExecuteNode:

    def test_skips_on_pipeline_error(self):
        assert execute_node({"pipeline_error": "x", "selected": ["B-p2-over-p"]}) == {"reports": []}

    def test_exception_becomes_error_report(self, exploding_check):
        result = execute_node({"selected": [exploding_check], "seed": 3})
        report, = result["reports"]
        assert report.status == "error"
        assert "boom" in report.message
        assert report.seed == 3

    def test_reports_in_id_order(self):
        result = execute_node({"selected": ["S-quasi-ideal", "P-primitive-times-unit"]})
        assert [r.check_id for r in result["reports"]] == ["P-primitive-times-unit", "S-quasi-ideal"]


class TestOutputNode:

    def test_all_pass(self):
        result = output_node({"reports": [_report("A"), _report("B")], "effective_seed": 5})
        assert result["exit_status"] == 0
        assert result["final_output"]["summary"] == {"pass": 2, "fail": 0, "error": 0}
        assert result["final_output"]["seed"] == 5

    @pytest.mark.parametrize("status", ["fail", "error"])
    def test_any_failure_is_nonzero(self, status):
        result = output_node({"reports": [_report("A"), _report("B", status)]})
        assert result["exit_status"] == 1

    def test_pipeline_error(self):
        result = output_node({"pipeline_error": "unknown check id: x"})
        assert result["final_output"] is None
        assert result["exit_status"] == 2

    def test_no_wall_time_in_output(self):
        result = output_node({"reports": [_report("A")]})
        assert "wall_time_ms" not in result["final_output"]["reports"][0]


# ---------------------------------------------------------------------------
# End to end
# ---------------------------------------------------------------------------


class TestRunChecks:

    def test_contracting_suite(self):
        state = run_checks("L-contracting-*")
        reports = state["reports"]
        assert [r.check_id for r in reports] == ["L-contracting-1", "L-contracting-2"]
        assert all(r.passed for r in reports), [r.counterexamples for r in reports]
        assert state["exit_status"] == 0
        assert state["audit_written"] is True

    def test_unknown_id(self):
        state = run_checks("nonexistent")
        assert state["exit_status"] == 2
        assert state["final_output"] is None
        assert not state.get("reports")

    def test_error_does_not_stop_the_run(self, exploding_check, monkeypatch):
        monkeypatch.setattr("src.pipeline.nodes.select.resolve", lambda pattern: [exploding_check, "B-p2-over-p"])
        state = run_checks("ignored")
        statuses = {r.check_id: r.status for r in state["reports"]}
        assert statuses == {"B-p2-over-p": "pass", "X-explodes": "error"}
        assert state["exit_status"] == 1

    def test_same_seed_same_bytes(self):
        first = run_checks("[BG]-*", seed=0xBEEF)["final_output"]
        second = run_checks("[BG]-*", seed=0xBEEF)["final_output"]
        assert DeepDiff(first, second) == {}
        assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)
