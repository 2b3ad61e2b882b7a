"""Validation reports and the exception hierarchy shared by every module."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class CatlawError(Exception):
    pass


class StructureError(CatlawError):
    """A table is malformed: wrong length or an index out of range."""


class ComposabilityError(CatlawError):
    pass


class BoundaryError(CatlawError):
    """Functors, categories or transformations do not line up."""


class PreconditionError(CatlawError):
    def __init__(self, message: str, report: "Report | None" = None):
        super().__init__(message)
        self.report = report


class EnumerationBoundError(CatlawError):
    pass


@dataclass
class Failure:
    law: str
    witness: dict[str, Any]
    detail: str = ""

    def as_dict(self) -> dict[str, Any]:
        return {"law": self.law, "witness": dict(self.witness), "detail": self.detail}

    def __str__(self):
        w = ", ".join(f"{k}={v}" for k, v in self.witness.items())
        s = f"{self.law} violated at {w}"
        return f"{s}: {self.detail}" if self.detail else s


@dataclass
class Report:
    """Outcome of a law check.

    Only the first (lowest-id) witness of each violated law is kept;
    ``violations`` counts all of them.
    """

    subject: str = ""
    failures: list[Failure] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)
    violations: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok

    def fail(self, law: str, witness: dict[str, Any], detail: str = "") -> None:
        n = self.violations.get(law, 0)
        self.violations[law] = n + 1
        if n == 0:
            self.failures.append(Failure(law, witness, detail))

    def failed_laws(self) -> list[str]:
        return [f.law for f in self.failures]

    def merge(self, other: "Report", prefix: str = "") -> "Report":
        for f in other.failures:
            law = f"{prefix}{f.law}"
            self.violations[law] = self.violations.get(law, 0) + other.violations.get(f.law, 1)
            self.failures.append(Failure(law, f.witness, f.detail))
        for k, v in other.counts.items():
            self.counts[f"{prefix}{k}"] = self.counts.get(f"{prefix}{k}", 0) + v
        return self

    def require(self) -> "Report":
        if not self.ok:
            raise PreconditionError(f"{self.subject or 'check'} failed: {self.failures[0]}", self)
        return self

    def __str__(self):
        head = self.subject or "report"
        if self.ok:
            return f"{head}: ok"
        return f"{head}: " + "; ".join(str(f) for f in self.failures)
