"""Failure reports shared by the checkers and verifiers."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Finding:
    check: str
    message: str
    data: dict[str, Any] = field(default_factory=dict)


@dataclass
class Report:
    """An ordered list of findings; an empty report means every check passed."""

    name: str = ""
    findings: list[Finding] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.findings

    def __len__(self) -> int:
        return len(self.findings)

    def __iter__(self):
        return iter(self.findings)

    def fail(self, check: str, message: str, **data: Any) -> None:
        self.findings.append(Finding(check, message, data))

    def note(self, message: str) -> None:
        self.notes.append(message)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for f in other.findings:
            self.findings.append(Finding(prefix + f.check, f.message, f.data))
        self.notes.extend(prefix + n for n in other.notes)

    def to_text(self) -> str:
        head = f"{self.name or 'report'}: {'OK' if self.ok else f'{len(self.findings)} failure(s)'}"
        lines = [head]
        lines += [f"FAIL {f.check}: {f.message}" for f in self.findings]
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "ok": self.ok,
            "failures": [
                {"check": f.check, "message": f.message, "data": _jsonable(f.data)}
                for f in self.findings
            ],
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (int, float, str, bool)) or obj is None:
        return obj
    return str(obj)
