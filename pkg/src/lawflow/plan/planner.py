"""Planners emit plan source; plan_and_repair drives the validate loop.

The mock planner compiles a fixed template per task, so the whole pipeline
is deterministic and testable offline. Its repair step is intentionally
dumb: apply the suggested tool name, drop the rejected keyword, try again.
A hosted planner can slot in behind the same protocol.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Protocol

from ..config import DEFAULT_CONFIG
from .interp import TraceEntry, execute_plan
from .registry import ToolRegistry
from .validate import Diagnostic, ValidationReport, check_tools, parse_report


class QueryLike(Protocol):
    task: str
    entities: dict[str, str]
    clause_label: str | None
    hint: str | None


class Planner(Protocol):
    name: str

    def propose(self, query: QueryLike, registry: ToolRegistry,
                feedback: list[ValidationReport] | None, attempt: int) -> str: ...


_ENTITY_KW = (("fund", "funds", "Fund"), ("trust", "trusts", "Trust"),
              ("custodian", "custodians", "Custodian"))

_NUMBER_WORDS = {
    "one": 1, "two": 2, "three": 3, "four": 4, "five": 5, "six": 6,
    "seven": 7, "eight": 8, "nine": 9, "ten": 10, "eleven": 11, "twelve": 12,
}


def _sample_k_from_hint(hint: str | None) -> int | None:
    if not hint or "sample" not in hint.lower():
        return None
    for token in re.findall(r"[a-z]+|\d+", hint.lower()):
        if token.isdigit():
            return int(token)
        if token in _NUMBER_WORDS:
            return _NUMBER_WORDS[token]
    return None


def _entity_args(entities: dict[str, str]) -> str:
    parts = [f'{kw}="{entities[key]}"' for key, kw, _ in _ENTITY_KW if entities.get(key)]
    return ", ".join(parts)


def _entity_desc(entities: dict[str, str]) -> str:
    parts = [f"{label} '{entities[key]}'" for key, _, label in _ENTITY_KW
             if entities.get(key)]
    return " and ".join(parts)


def compile_template(task: str, entities: dict[str, str],
                     clause_label: str | None = None,
                     sample_k: int | None = None) -> str:
    """Render the canonical plan for a task; raises on unknown tasks."""
    args = _entity_args(entities)
    desc = _entity_desc(entities)
    none_found = f'return "No agreements found for {desc}"'

    simple_bodies = {
        "explore_all": "    return agreements",
        "find_master_agreements":
            "    let masters = get_master(contracts=agreements[1])\n"
            "    return masters",
        "find_master_dates":
            '    let dates = get_dates(contracts=agreements[1], kind="master")\n'
            "    return dates",
        "find_termination_dates":
            "    let lifecycles = get_lifecycle(contracts=agreements[1])\n"
            "    return lifecycles",
        "find_parties":
            "    let parties = get_parties(contracts=agreements[1])\n"
            "    return parties",
    }

    if task in simple_bodies:
        body = simple_bodies[task]
    elif task in ("find_clause", "summarize_clause", "compare_clause"):
        if not clause_label:
            raise ValueError(f"task {task!r} needs a clause label")
        fetch = (f"    let sections = get_section_v2(agg_list=agreements[1], "
                 f'section_name="{clause_label}")')
        picked = "sections"
        if sample_k is not None:
            fetch += f"\n    let picked = sample(sections, {sample_k})"
            picked = "picked"
        none_sections = f'return "No {clause_label} sections found for {desc}"'
        if task == "find_clause":
            body = f"{fetch}\n    return {picked}"
        else:
            consume = (f"get_summary_v1(text_list={picked})"
                       if task == "summarize_clause" else
                       f"get_comparison_v1(list_agreement_tuples=agreements, "
                       f"text_list={picked})")
            body = (f"{fetch}\n"
                    f"    if not empty({picked}) {{\n"
                    f"        let output = {consume}\n"
                    f"        return output\n"
                    f"    }} else {{\n"
                    f"        {none_sections}\n"
                    f"    }}")
    else:
        raise ValueError(f"unknown task {task!r}")

    return (f"let agreements = get_agreements_for({args})\n"
            f"if not empty(agreements) {{\n"
            f"{body}\n"
            f"}} else {{\n"
            f"    {none_found}\n"
            f"}}")


_BAD_TOOL_RE = re.compile(r"unknown tool '([^']+)'")
_BAD_KWARG_RE = re.compile(r"no keyword '([^']+)'")


def apply_repairs(source: str, reports: list[ValidationReport]) -> str:
    """Deterministic text fixes driven by the diagnostics."""
    fixed = source
    for report in reports:
        for diag in report.diagnostics:
            if diag.code == "E_UNKNOWN_TOOL" and diag.suggestion:
                match = _BAD_TOOL_RE.search(diag.message)
                if match:
                    fixed = fixed.replace(match.group(1), diag.suggestion)
            elif diag.code == "E_BAD_KWARG":
                match = _BAD_KWARG_RE.search(diag.message)
                if match:
                    kw = re.escape(match.group(1))
                    value = r"(?:\"[^\"]*\"|'[^']*'|[A-Za-z_][A-Za-z0-9_]*(?:\[\d+\])?|\d+)"
                    fixed = re.sub(rf",\s*{kw}\s*=\s*{value}", "", fixed)
                    fixed = re.sub(rf"{kw}\s*=\s*{value}\s*,\s*", "", fixed)
    return fixed


@dataclass
class MockPlanner:
    """Template planner with optional fault injection for repair tests.

    fault: None for clean plans, "typo" to corrupt one tool name on the
    first attempt, "bad_kwarg" to add a bogus keyword, "garbage" to emit
    unparseable text on every attempt.
    """

    fault: str | None = None
    name: str = "mock"
    _last_source: str = field(default="", repr=False)

    def propose(self, query: QueryLike, registry: ToolRegistry,
                feedback: list[ValidationReport] | None, attempt: int) -> str:
        if self.fault == "garbage":
            return "let let = (((\n"
        if attempt > 1 and feedback and self._last_source:
            repaired = apply_repairs(self._last_source, feedback)
            if repaired != self._last_source:
                self._last_source = repaired
                return repaired
        source = compile_template(
            query.task, query.entities, query.clause_label,
            _sample_k_from_hint(query.hint))
        if attempt == 1:
            if self.fault == "typo":
                source = source.replace("get_agreements_for", "get_agrements_for", 1)
            elif self.fault == "bad_kwarg":
                source = source.replace(
                    "get_agreements_for(", 'get_agreements_for(scope="all", ', 1)
        self._last_source = source
        return source


@dataclass
class Attempt:
    source: str
    reports: list[ValidationReport]
    trace: list[TraceEntry] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "reports": [r.to_dict() for r in self.reports],
            "trace": [e.to_dict() for e in self.trace],
        }


@dataclass
class PlanRun:
    ok: bool
    result: object | None
    source: str | None
    attempts: list[Attempt]
    error: Diagnostic | None = None

    @property
    def reports(self) -> list[ValidationReport]:
        return self.attempts[-1].reports if self.attempts else []

    @property
    def trace(self) -> list[TraceEntry]:
        return self.attempts[-1].trace if self.attempts else []


def plan_and_repair(query: QueryLike, planner: Planner, registry: ToolRegistry,
                    bindings: dict | None = None,
                    max_attempts: int | None = None,
                    call_budget: int | None = None) -> PlanRun:
    """Propose, validate, execute; feed failures back; stop on success."""
    cap = DEFAULT_CONFIG.max_repair_attempts if max_attempts is None else max_attempts
    if cap < 1:
        raise ValueError("max_attempts must be positive")
    attempts: list[Attempt] = []
    feedback: list[ValidationReport] | None = None
    for attempt_no in range(1, cap + 1):
        source = planner.propose(query, registry, feedback, attempt_no)
        program, syntax = parse_report(source)
        record = Attempt(source, [syntax])
        attempts.append(record)
        if program is None:
            feedback = record.reports
            continue
        hall = check_tools(program, registry)
        record.reports.append(hall)
        if not hall.passed:
            feedback = record.reports
            continue
        result, runtime, trace = execute_plan(program, registry, bindings,
                                              call_budget)
        record.reports.append(runtime)
        record.trace = trace
        if runtime.passed:
            return PlanRun(True, result, source, attempts)
        feedback = record.reports
    error = Diagnostic("E_EXHAUSTED", f"no valid plan after {cap} attempts", "planner")
    return PlanRun(False, None, None, attempts, error)
