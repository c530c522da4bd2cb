"""Check reports shared by the library verifiers and the command line.

A report is an ordered list of named checks, each pass/fail/inconclusive
with an optional witness string.  Rendering is deterministic: same data,
same bytes.  ``status`` is "fail" if anything failed, else "inconclusive"
if anything could not be decided inside the window, else "pass".
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA = "pogcat-report@1"

_EXIT = {"pass": 0, "fail": 1, "inconclusive": 3}


@dataclass
class CheckItem:
    name: str
    ok: bool | None  # None marks a window-limited, undecided check
    detail: str = ""

    @property
    def status(self) -> str:
        if self.ok is True:
            return "pass"
        if self.ok is False:
            return "fail"
        return "inconclusive"


@dataclass
class Report:
    title: str
    items: list[CheckItem] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, name: str, ok: bool | None, detail: str = "") -> None:
        self.items.append(CheckItem(name, ok, detail))

    def note(self, text: str) -> None:
        self.notes.append(text)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for item in other.items:
            name = f"{prefix}{item.name}" if prefix else item.name
            self.items.append(CheckItem(name, item.ok, item.detail))
        self.notes.extend(other.notes)

    @property
    def ok(self) -> bool:
        return all(item.ok is True for item in self.items)

    @property
    def status(self) -> str:
        if any(item.ok is False for item in self.items):
            return "fail"
        if any(item.ok is None for item in self.items):
            return "inconclusive"
        return "pass"

    @property
    def exit_code(self) -> int:
        return _EXIT[self.status]

    def first_failure(self) -> CheckItem | None:
        for item in self.items:
            if item.ok is False:
                return item
        return None

    def lines(self) -> list[str]:
        out = [f"== {self.title} =="]
        for item in self.items:
            mark = {"pass": "PASS", "fail": "FAIL", "inconclusive": "INCONCLUSIVE"}
            line = f"{mark[item.status]:12s} {item.name}"
            if item.detail:
                line += f"  [{item.detail}]"
            out.append(line)
        for note in self.notes:
            out.append(f"note: {note}")
        out.append(f"status: {self.status}")
        return out

    def render(self) -> str:
        return "\n".join(self.lines()) + "\n"

    def to_obj(self) -> dict:
        return {
            "schema": SCHEMA,
            "title": self.title,
            "status": self.status,
            "checks": [
                {"name": i.name, "status": i.status, "detail": i.detail}
                for i in self.items
            ],
            "notes": list(self.notes),
        }

    def render_json(self) -> str:
        return json.dumps(self.to_obj(), indent=2, sort_keys=True) + "\n"
