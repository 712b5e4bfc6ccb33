from __future__ import annotations

import json

from sipkit.core.report import CheckResult, Report
from sipkit.ui.render import render_json, render_text, render_value


def test_check_keeps_first_counterexample():
    check = CheckResult("laws")
    assert check.record(True)
    assert not check.record(False, "a=1")
    check.record(False, "a=2")
    assert (check.instances, check.failures) == (3, 2)
    assert check.first_counterexample == "a=1"
    assert not check.passed


def test_merge_keeps_order_and_sums():
    left = Report("verify oracle", 2, 1, 0)
    left.check("a").record(True)
    right = Report("verify oracle", 2, 1, 0)
    right.check("b").record(False, "x")
    right.check("a").record(True)
    left.merge(right)
    assert [c.name for c in left.checks] == ["a", "b"]
    assert left.check("a").instances == 2
    assert not left.passed
    assert left.check("b").first_counterexample == "x"


def test_renderings():
    report = Report("verify lemma24", 2, 1, 7)
    report.check("cocycle").record(True)
    report.check("inverse-signature").record(False, "block 3")
    text = render_text(report, ["note"])
    assert text.splitlines() == [
        "verify lemma24: alpha=2 degree=1 seed=7",
        "note",
        "  cocycle: 1 instances, 0 failures [ok]",
        "  inverse-signature: 1 instances, 1 failures [FAIL]",
        "    first counterexample: block 3",
        "FAIL",
    ]
    data = json.loads(render_json(report))
    assert data["pass"] is False
    assert data["checks"][1] == {
        "name": "inverse-signature",
        "instances": 1,
        "failures": 1,
        "firstCounterexample": "block 3",
    }
    assert render_value("ord add", "w", "text") == "w"
    assert json.loads(render_value("ord add", "w", "json")) == {"command": "ord add", "result": "w"}
