"""Check results and reports produced by verifiers and campaigns."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckResult:
    """Counts for one named check and the first failing witness."""

    name: str
    instances: int = 0
    failures: int = 0
    first_counterexample: str | None = None

    def record(self, ok: bool, witness: object = None) -> bool:
        """Count one instance; keep the witness of the first failure."""
        self.instances += 1
        if not ok:
            self.failures += 1
            if self.first_counterexample is None:
                self.first_counterexample = "" if witness is None else str(witness)
        return ok

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def merge(self, other: "CheckResult") -> None:
        self.instances += other.instances
        self.failures += other.failures
        if self.first_counterexample is None:
            self.first_counterexample = other.first_counterexample

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "instances": self.instances,
            "failures": self.failures,
            "firstCounterexample": self.first_counterexample,
        }


@dataclass
class Report:
    """An ordered collection of checks for one command."""

    command: str
    alpha: int
    degree: int
    seed: int
    checks: list[CheckResult] = field(default_factory=list)

    def check(self, name: str) -> CheckResult:
        """The check with this name, created on first use."""
        for result in self.checks:
            if result.name == name:
                return result
        result = CheckResult(name)
        self.checks.append(result)
        return result

    def add(self, result: CheckResult) -> None:
        self.check(result.name).merge(result)

    def merge(self, other: "Report") -> None:
        """Fold another report in; check order follows first appearance."""
        for result in other.checks:
            self.add(result)

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.checks)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "alpha": self.alpha,
            "degree": self.degree,
            "seed": self.seed,
            "checks": [result.to_dict() for result in self.checks],
            "pass": self.passed,
        }
