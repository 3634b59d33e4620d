"""Check results shared by every verification routine."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
HYPOTHESIS_NOT_MET = "hypothesis-not-met"
NOT_APPLICABLE = "not-applicable"
UNKNOWN_BUDGET = "unknown-budget"
STATUSES = (PASS, FAIL, HYPOTHESIS_NOT_MET, NOT_APPLICABLE, UNKNOWN_BUDGET)


@dataclass
class Check:
    name: str
    status: str
    details: str = ""
    counterexample: object = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status, "details": self.details}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, status: str, details: str = "", counterexample=None) -> Check:
        c = Check(name, status, details, counterexample)
        self.checks.append(c)
        return c

    def expect(self, name: str, ok: bool, details: str = "", counterexample=None) -> Check:
        return self.add(name, PASS if ok else FAIL, details, None if ok else counterexample)

    def extend(self, other: "Report") -> "Report":
        self.checks.extend(other.checks)
        return self

    @property
    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failed

    @property
    def status(self) -> str:
        if not self.checks:
            return NOT_APPLICABLE
        if self.failed:
            return FAIL
        if any(c.status == PASS for c in self.checks):
            return PASS
        return self.checks[0].status

    def __iter__(self):
        return iter(self.checks)

    def __len__(self):
        return len(self.checks)

    def __repr__(self):
        lines = [f"{c.status:>18}  {c.name}: {c.details}" for c in self.checks]
        return "Report(\n  " + "\n  ".join(lines) + "\n)"
