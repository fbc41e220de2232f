"""Per-check pass/fail reports shared by all validators."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    passed: bool
    witness: dict[str, Any] | None = None
    note: str | None = None


@dataclass
class ValidationReport:
    title: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: dict | None = None, note: str | None = None) -> bool:
        self.checks.append(Check(name, bool(passed), None if passed else witness, note))
        return bool(passed)

    def extend(self, other: "ValidationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness, c.note))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self) -> list[str]:
        return [c.name for c in self.checks]

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def summary(self) -> str:
        bad = ", ".join(c.name for c in self.failures())
        return f"{self.title}: {'pass' if self.ok else 'FAIL [' + bad + ']'}"
