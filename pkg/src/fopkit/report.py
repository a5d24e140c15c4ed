"""Command reports: text rendering, JSON form and exit codes."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .structures import Structure, format_structure

SCHEMA_ID = "fopkit.report/1"

EXIT_CODES = {"ok": 0, "counterexample": 1, "error": 2}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": SCHEMA_ID,
    "type": "object",
    "required": ["schema", "command", "verdict", "result", "counterexample",
                 "sizes", "checked", "seconds", "notes", "error"],
    "additionalProperties": False,
    "properties": {
        "schema": {"const": SCHEMA_ID},
        "command": {"type": "string"},
        "verdict": {"enum": list(EXIT_CODES)},
        "result": {"type": "object"},
        "counterexample": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["structure", "memberships"],
                    "additionalProperties": False,
                    "properties": {
                        "structure": {"type": "string"},
                        "memberships": {"type": "object"},
                        "related": {"type": "object",
                                    "additionalProperties": {"type": "string"}},
                    },
                },
            ]
        },
        "sizes": {
            "oneOf": [
                {"type": "null"},
                {"type": "array", "items": {"type": "integer", "minimum": 1},
                 "minItems": 2, "maxItems": 2},
            ]
        },
        "checked": {"type": "integer", "minimum": 0},
        "seconds": {"type": "number", "minimum": 0},
        "notes": {"type": "array", "items": {"type": "string"}},
        "error": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["type", "message"],
                    "properties": {"type": {"type": "string"}, "message": {"type": "string"},
                                   "suggested_max_size": {"type": "integer"}},
                },
            ]
        },
    },
}


@dataclass
class Counterexample:
    structure: Structure
    memberships: dict
    related: dict = field(default_factory=dict)  # label -> Structure

    def to_json(self) -> dict:
        out = {"structure": format_structure(self.structure, "A"),
               "memberships": dict(self.memberships)}
        if self.related:
            out["related"] = {k: format_structure(v, "B") for k, v in self.related.items()}
        return out


@dataclass
class Report:
    command: str
    verdict: str
    result: dict = field(default_factory=dict)
    counterexample: Counterexample | None = None
    sizes: tuple[int, int] | None = None
    checked: int = 0
    seconds: float = 0.0
    notes: list[str] = field(default_factory=list)
    error: dict | None = None
    # extra text printed under the headline in human mode
    body: str = ""

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_ID,
            "command": self.command,
            "verdict": self.verdict,
            "result": self.result,
            "counterexample": None if self.counterexample is None
            else self.counterexample.to_json(),
            "sizes": None if self.sizes is None else list(self.sizes),
            "checked": self.checked,
            "seconds": round(self.seconds, 6),
            "notes": list(self.notes),
            "error": self.error,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def render(self) -> str:
        if self.verdict == "error":
            lines = [f"error: {self.error['message']}"]
            if "suggested_max_size" in self.error:
                lines.append(f"hint: try --max-size {self.error['suggested_max_size']}")
            return "\n".join(lines)
        lines = []
        if self.body:
            lines.append(self.body.rstrip("\n"))
        if self.sizes is not None:
            lo, hi = self.sizes
            lines.append(f"{self.command}: {_word(self.verdict)} "
                         f"(sizes {lo}..{hi}, {self.checked} checked, {self.seconds:.2f}s)")
        for note in self.notes:
            lines.append(f"note: {note}")
        if self.counterexample is not None:
            ce = self.counterexample
            lines.append(format_structure(ce.structure, "A"))
            for label, value in ce.memberships.items():
                lines.append(f"  {label}: {_show(value)}")
            for label, B in ce.related.items():
                lines.append(f"{label}:")
                lines.append(format_structure(B, "B"))
        return "\n".join(lines)


def _word(verdict: str) -> str:
    return {"ok": "verified", "counterexample": "counterexample found"}[verdict]


def _show(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    return str(value)


def error_report(command: str, exc: Exception, **extra) -> Report:
    error = {"type": type(exc).__name__, "message": str(exc)}
    error.update(extra)
    return Report(command, "error", error=error)
