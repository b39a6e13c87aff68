"""
Sprint 7: CLI Tests

Tests:
  - witt ghost / eval / dwork one-shot evaluation
  - sigma, coeq, toy and prism subcommands
  - check run / list, exit statuses and --format json
  - bench strategies

Run:  PYTHONPATH=. .venv/Scripts/pytest tests/test_cli.py -v
"""

from __future__ import annotations

import json

import pytest

from src.cli.main import main


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


# ---------------------------------------------------------------------------
# witt
# ---------------------------------------------------------------------------


class TestWitt:

    def test_ghost(self, capsys):
        status, out, _ = run(capsys, "witt", "ghost", "--ring", "Zmod(2^4)", "--vec", "[2,1]")
        assert status == 0
        assert out.strip() == "[2, 6]"

    def test_eval_teichmuller_product(self, capsys):
        status, out, _ = run(capsys, "witt", "eval", "--op", "mul", "--a", "[3]", "--b", "[3]",
                             "--ring", "Zmod(2^2)")
        assert status == 0
        assert out.strip() == "[1,0]"

    def test_eval_json(self, capsys):
        status, out, _ = run(capsys, "witt", "eval", "--op", "add", "--a", "[1,0]", "--b", "[1,0]",
                             "--ring", "Zmod(2)", "--format", "json")
        assert status == 0
        payload = json.loads(out)
        assert payload["components"] == ["0", "1"]
        assert payload["p"] == 2

    def test_dwork(self, capsys):
        status, out, _ = run(capsys, "--format", "json", "witt", "dwork", "--p", "2", "--n", "2", "--K", "4")
        assert status == 0
        assert json.loads(out)["n"] == 2

    def test_bad_vector(self, capsys):
        status, _, err = run(capsys, "witt", "ghost", "--ring", "Zmod(4)", "--vec", "[1,")
        assert status == 2
        assert "position" in err

    def test_bad_ring(self, capsys):
        status, _, err = run(capsys, "witt", "ghost", "--ring", "Zmod(6)", "--vec", "[1]")
        assert status == 2
        assert err.startswith("error:")


# ---------------------------------------------------------------------------
# sigma / coeq / toy / prism
# ---------------------------------------------------------------------------


class TestSigma:

    POINT = ("--ring", "Zmod(2)", "--v", "1", "--zeta", "[0,0]")

    def test_classify(self, capsys):
        status, out, _ = run(capsys, "--format", "json", "sigma", "classify", *self.POINT)
        assert status == 0
        assert "SigmaPlus" in json.loads(out)["tags"]

    def test_fprime(self, capsys):
        status, out, _ = run(capsys, "--format", "json", "sigma", "fprime", *self.POINT)
        assert status == 0
        assert json.loads(out)["components"] == ["0", "1"]

    def test_not_primitive(self, capsys):
        status, _, err = run(capsys, "sigma", "classify", "--ring", "Zmod(2)", "--v", "1",
                             "--zeta", "[0,0]", "--gamma", "[0,0]")
        assert status == 2
        assert "primitive" in err


class TestCategories:

    def test_coeq_count(self, capsys):
        status, out, _ = run(capsys, "coeq", "count", "--q", "2")
        assert status == 0
        assert "bruteforce" in out

    def test_gamma2_payload(self, capsys):
        status, out, _ = run(capsys, "--format", "json", "toy", "gamma2", "--q", "2")
        assert status == 0
        payload = json.loads(out)
        assert len(payload["objects"]) == 3
        assert min(a["degree"] for a in payload["arrows"]) == -1


class TestPrism:

    def test_make(self, capsys):
        status, out, _ = run(capsys, "--format", "json", "prism", "make", "--kind", "qde", "--p", "2")
        assert status == 0
        assert json.loads(out)["kind"] == "q_de_rham"

    def test_delta_of_q(self, capsys):
        status, out, _ = run(capsys, "--format", "json", "prism", "delta", "--kind", "qde", "--p", "2",
                             "--K", "5", "--a", "1+t")
        assert status == 0
        payload = json.loads(out)
        assert payload["delta"] == "0"
        assert payload["precision"] == 4

    def test_check(self, capsys):
        status, out, _ = run(capsys, "prism", "check", "--kind", "qde", "--p", "2")
        assert status == 0
        assert " pass " in out

    def test_unknown_kind(self, capsys):
        status, _, _ = run(capsys, "prism", "make", "--kind", "crystalline", "--p", "2")
        assert status == 2


# ---------------------------------------------------------------------------
# check / bench
# ---------------------------------------------------------------------------


class TestCheckCommands:

    def test_list(self, capsys):
        status, out, _ = run(capsys, "check", "list")
        assert status == 0
        assert len(out.strip().splitlines()) >= 25

    def test_list_json_filter(self, capsys):
        status, out, _ = run(capsys, "check", "list", "sigma", "--json")
        assert status == 0
        rows = json.loads(out)
        assert rows and all(r["module"] == "sigma" for r in rows)

    def test_run_prints_witness(self, capsys):
        status, out, _ = run(capsys, "check", "run", "B-p2-over-p")
        assert status == 0
        assert "a[p=2,n=1]" in out

    def test_run_json(self, capsys):
        status, out, _ = run(capsys, "--seed", "5", "check", "run", "L-contracting-*", "--format", "json")
        assert status == 0
        payload = json.loads(out)
        assert payload["seed"] == 5
        assert [r["check_id"] for r in payload["reports"]] == ["L-contracting-1", "L-contracting-2"]

    def test_run_unknown(self, capsys):
        status, _, err = run(capsys, "check", "run", "nonexistent")
        assert status == 2
        assert "nonexistent" in err


class TestBench:

    def test_strategies(self, capsys):
        status, out, _ = run(capsys, "--format", "json", "bench", "strategies", "--ring", "Zmod(3)",
                             "--n", "2", "--samples", "5")
        assert status == 0
        assert set(json.loads(out)["ns"]) == {"polynomial", "ghost"}
