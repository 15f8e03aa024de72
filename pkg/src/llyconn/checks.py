"""Pass/fail tally shared by the census and family verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    passed: int = 0
    failures: list = field(default_factory=list)

    def record(self, ok: bool, detail=None):
        if ok:
            self.passed += 1
        else:
            self.failures.append(detail)

    def merge(self, other: "Check"):
        self.passed += other.passed
        self.failures += other.failures

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"ok": self.ok, "passed": self.passed, "failures": self.failures}
