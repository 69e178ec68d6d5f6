"""Coded errors shared across modules.

Every failure that crosses a module boundary carries a stable ``code`` string
(E_NO_DATE, E_UNKNOWN_TOOL, ...) so the cache sidecar, validation reports, and
the HTTP problem-detail envelope can all speak the same vocabulary.
"""

from __future__ import annotations


class ToolError(Exception):
    """A categorized failure from a tool or pipeline stage."""

    def __init__(self, code: str, message: str, *, locus: str | None = None):
        super().__init__(f"{code}: {message}" if locus is None else f"{code}: {message} ({locus})")
        self.code = code
        self.message = message
        self.locus = locus

    def problem_detail(self) -> dict:
        return {"code": self.code, "message": self.message, "locus": self.locus}


class PlanError(ToolError):
    """Plan-source failure with a statement locus (line/column)."""

    def __init__(self, code: str, message: str, line: int = 0, column: int = 0):
        locus = f"line {line}, col {column}" if line else None
        super().__init__(code, message, locus=locus)
        self.line = line
        self.column = column
