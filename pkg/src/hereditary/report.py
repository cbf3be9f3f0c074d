"""Check reports shared by every checker and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    """Outcome of one exhaustive check.

    ``expected`` is the outcome the mathematics predicts; a report is ``ok``
    when the observed status matches it, so a reproduced expected failure
    counts as a success for a suite.
    """

    check: str
    status: str = "pass"
    expected: str = "pass"
    details: dict[str, Any] = field(default_factory=dict)
    witness: Any = None
    checked: int = 0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def ok(self) -> bool:
        return self.status == self.expected

    def fail(self, witness: Any, **details) -> Report:
        """Record the first counterexample; later calls keep the first witness."""
        if self.status == "pass":
            self.status = "fail"
            self.witness = witness
            self.details.update(details)
        return self

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"check": self.check, "status": self.status, "expected": self.expected,
                               "checked": self.checked}
        out.update(self.details)
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, default=str)

    def summary(self) -> str:
        mark = "ok" if self.ok else "MISMATCH"
        line = f"[{mark}] {self.check}: {self.status} (expected {self.expected}, {self.checked} cases)"
        if self.witness is not None:
            line += f"\n    witness: {self.witness}"
        return line


def combine(name: str, reports: list[Report], expected: str = "pass") -> Report:
    """Aggregate sub-reports; the first failing one supplies the witness."""
    out = Report(name, expected=expected)
    out.details["parts"] = [r.to_dict() for r in reports]
    for r in reports:
        out.checked += r.checked
        if not r.passed:
            out.fail({"part": r.check, "witness": r.witness})
    return out
