"""Structured validation reports.

Every validator in this package returns a :class:`Report`; an empty report
means the checked structure satisfies all of its axioms.  Violations carry a
rule name and the witnessing elements so a failure can always be traced back
to a concrete counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

MALFORMED = "malformed"
AXIOM = "axiom"
DIAGNOSTIC = "diagnostic"


@dataclass(frozen=True)
class Violation:
    kind: str
    rule: str
    witnesses: tuple[str, ...] = ()
    detail: str = ""

    def format(self) -> str:
        out = f"{self.kind} {self.rule}"
        if self.witnesses:
            out += " witnesses=" + ",".join(self.witnesses)
        if self.detail:
            out += " -- " + self.detail
        return out


class Report:
    """Accumulates violations and diagnostics from one validation pass.

    Diagnostics are informational only; a report with diagnostics but no
    violations still counts as passing.
    """

    def __init__(self) -> None:
        self.entries: list[Violation] = []

    def flag(self, kind: str, rule: str, witnesses: Iterable[str] = (), detail: str = "") -> None:
        self.entries.append(Violation(kind, rule, tuple(witnesses), detail))

    def diagnostic(self, rule: str, detail: str = "") -> None:
        self.entries.append(Violation(DIAGNOSTIC, rule, (), detail))

    def extend(self, other: "Report") -> None:
        self.entries.extend(other.entries)

    @property
    def violations(self) -> list[Violation]:
        return [e for e in self.entries if e.kind != DIAGNOSTIC]

    @property
    def diagnostics(self) -> list[Violation]:
        return [e for e in self.entries if e.kind == DIAGNOSTIC]

    @property
    def ok(self) -> bool:
        return not self.violations

    def rules(self) -> set[str]:
        return {e.rule for e in self.violations}

    def lines(self) -> list[str]:
        return [e.format() for e in self.entries]

    def __str__(self) -> str:
        return "ok" if not self.entries else "\n".join(self.lines())

    def raise_if_failed(self, context: str = "validation") -> None:
        if not self.ok:
            raise ValidationFailed(context, self)


class ValidationFailed(ValueError):
    """Raised when a structure fails validation; carries the full report."""

    def __init__(self, context: str, report: Report):
        self.context = context
        self.report = report
        bad = report.violations
        msg = f"{context}: {bad[0].format()}" if bad else context
        if len(bad) > 1:
            msg += f" (+{len(bad) - 1} more)"
        super().__init__(msg)
