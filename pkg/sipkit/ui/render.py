"""Text and JSON renderings of reports and query results."""

from __future__ import annotations

import json
from typing import Iterable

from sipkit.core.report import Report


def render_text(report: Report, preamble: Iterable[str] = ()) -> str:
    """One header line, optional preamble lines, then one line per check."""
    lines = [f"{report.command}: alpha={report.alpha} degree={report.degree} seed={report.seed}"]
    lines.extend(preamble)
    for check in report.checks:
        status = "ok" if check.passed else "FAIL"
        lines.append(f"  {check.name}: {check.instances} instances, {check.failures} failures [{status}]")
        if check.first_counterexample is not None:
            lines.append(f"    first counterexample: {check.first_counterexample}")
    lines.append("pass" if report.passed else "FAIL")
    return "\n".join(lines)


def render_json(report: Report) -> str:
    return json.dumps(report.to_dict(), ensure_ascii=False, indent=2)


def render_value(command: str, value: str, fmt: str) -> str:
    """A single query answer; JSON wraps it as {"command", "result"}."""
    if fmt == "json":
        return json.dumps({"command": command, "result": value}, ensure_ascii=False, indent=2)
    return value
