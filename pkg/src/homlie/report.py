"""Report containers and JSON conversion of exact values."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, List, Optional

from .linalg import Mat, format_rational


def to_jsonable(x: Any) -> Any:
    """Recursively convert fractions, vectors and matrices to JSON values."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Mat):
        return x.to_strings()
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if hasattr(x, "to_dict"):
        return x.to_dict()
    return str(x)


@dataclass
class Check:
    anchor: str
    passed: bool
    failures: list = field(default_factory=list)
    applicable: bool = True
    note: str = ""

    def to_dict(self) -> dict:
        d = {"pass": self.passed, "applicable": self.applicable}
        if self.failures:
            d["failures"] = to_jsonable(self.failures)
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class Report:
    """Ordered collection of checks keyed by anchor."""

    name: str
    checks: List[Check] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def _find(self, anchor: str) -> Optional[Check]:
        for c in self.checks:
            if c.anchor == anchor:
                return c
        return None

    def record(self, anchor: str, failures=(), note: str = "") -> Check:
        """Add failures for ``anchor``; an empty list records a pass.

        Recording the same anchor twice merges the failures.
        """
        failures = list(failures)
        existing = self._find(anchor)
        if existing is not None:
            existing.failures.extend(failures)
            existing.passed = existing.passed and not failures
            if note and not existing.note:
                existing.note = note
            return existing
        c = Check(anchor, not failures, failures, True, note)
        self.checks.append(c)
        return c

    def expect(self, anchor: str, ok: bool, detail=None, note: str = "") -> Check:
        return self.record(anchor, [] if ok else [detail if detail is not None else {"indices": [], "residual": None}], note)

    def unmet(self, anchor: str, reason: str) -> Check:
        c = Check(anchor, True, [], False, reason)
        self.checks.append(c)
        return c

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, anchor: str) -> Check:
        c = self._find(anchor)
        if c is None:
            raise KeyError(anchor)
        return c

    def __contains__(self, anchor: str) -> bool:
        return self._find(anchor) is not None

    def merge(self, other: "Report") -> "Report":
        for c in other.checks:
            if c.applicable:
                self.record(c.anchor, c.failures, c.note)
            else:
                self.unmet(c.anchor, c.note)
        return self

    def to_dict(self) -> dict:
        out = {"name": self.name, "pass": self.passed, "checks": {c.anchor: c.to_dict() for c in self.checks}}
        if self.data:
            out["data"] = to_jsonable(self.data)
        return out

    def summary_lines(self) -> list:
        lines = []
        for c in self.checks:
            tag = "skip" if not c.applicable else ("ok" if c.passed else "FAIL")
            lines.append(f"[{tag:4}] {c.anchor}" + (f"  ({c.note})" if c.note else ""))
        return lines


def pair_failures(pairs) -> list:
    """Format ``(i, j, residual)`` or ``(i, j, k, residual)`` tuples."""
    return [{"indices": list(p[:-1]), "residual": p[-1]} for p in pairs]
