"""Line-oriented PASS/FAIL reports shared by every verification suite."""

from __future__ import annotations


class Check:
    """One verified identity: a name, the outcome, and the identity it certifies."""

    __slots__ = ("name", "passed", "detail", "tag")

    def __init__(self, name: str, passed: bool, detail: str = "", tag: str = ""):
        self.name = name
        self.passed = bool(passed)
        self.detail = detail
        self.tag = tag

    def line(self) -> str:
        out = f"CHECK {self.name} {'PASS' if self.passed else 'FAIL'}"
        if self.detail:
            out += f" {self.detail}"
        return out

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed,
                "detail": self.detail, "tag": self.tag}

    def __repr__(self):
        return f"<{self.line()}>"


class Report:
    """Ordered list of checks; ok iff every check passed."""

    def __init__(self, checks=()):
        self.checks: list[Check] = list(checks)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "", tag: str = "") -> Check:
        c = Check(name, passed, detail, tag)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> "Report":
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.detail, c.tag))
        return self

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]

    def summary(self) -> str:
        bad = len(self.failures())
        return f"{len(self.checks) - bad}/{len(self.checks)} checks passed"

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checks": [c.to_dict() for c in self.checks]}

    def __repr__(self):
        return f"<Report {self.summary()}>"
