"""Sandboxed interpreter for validated plans.

Execution is sequential and budgeted. Every tool call lands in the trace
with an args digest and an outcome code; the digest deliberately excludes
durations so identical runs produce identical digests. The first failure
halts the plan and is returned as a runtime-tier report together with the
partial trace.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from typing import Callable

from ..config import DEFAULT_CONFIG
from ..errors import ToolError
from . import ast
from .registry import ToolRegistry, ToolSpec
from .validate import Diagnostic, ValidationReport
from .values import conforms, digest_value, is_blank


@dataclass
class TraceEntry:
    tool: str
    args: dict[str, str]
    duration_ms: float
    outcome: str

    def digest(self) -> dict:
        # durations vary run to run; everything else must not
        return {"tool": self.tool, "args": self.args, "outcome": self.outcome}

    def to_dict(self) -> dict:
        return {"tool": self.tool, "args": self.args,
                "duration_ms": round(self.duration_ms, 3), "outcome": self.outcome}


def trace_digest(trace: list[TraceEntry]) -> str:
    payload = json.dumps([e.digest() for e in trace], sort_keys=True)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class _Halt(Exception):
    def __init__(self, diag: Diagnostic):
        super().__init__(diag.message)
        self.diag = diag


class _ReturnSignal(Exception):
    def __init__(self, value):
        self.value = value


@dataclass
class _Interp:
    registry: ToolRegistry
    bindings: dict[str, Callable]
    budget: int
    trace: list[TraceEntry] = field(default_factory=list)
    calls: int = 0

    def _at(self, node: ast.Node) -> str:
        return f"line {node.line}, column {node.column}"

    def _halt(self, code: str, message: str, node: ast.Node):
        raise _Halt(Diagnostic(code, message, self._at(node)))

    def _impl_for(self, spec: ToolSpec) -> Callable | None:
        return self.bindings.get(spec.name, spec.impl)

    def eval(self, expr: ast.Expr, env: dict):
        if isinstance(expr, ast.Literal):
            return expr.value
        if isinstance(expr, ast.Var):
            return env[expr.name]
        if isinstance(expr, ast.Call):
            return self.call(expr, env)
        if isinstance(expr, ast.Index):
            return self.index(expr, env)
        if isinstance(expr, ast.Sample):
            return self.sample(expr, env)
        raise TypeError(f"unhandled expression node {type(expr).__name__}")

    def call(self, call: ast.Call, env: dict):
        spec = self.registry.get(call.tool)
        if spec is None:
            self._halt("E_TOOL_FAIL", f"tool {call.tool!r} not in registry", call)
        impl = self._impl_for(spec)
        if impl is None:
            self._halt("E_TOOL_FAIL", f"tool {call.tool!r} has no implementation bound", call)
        kwargs = {kw: self.eval(value, env) for kw, value in call.kwargs}
        if self.calls >= self.budget:
            self._halt("E_BUDGET", f"tool call budget of {self.budget} exhausted", call)
        self.calls += 1
        digest = {kw: digest_value(v) for kw, v in kwargs.items()}

        for param in spec.params:
            if (param.required and param.type.name == "List"
                    and isinstance(kwargs.get(param.name), list)
                    and not kwargs[param.name]):
                self.trace.append(TraceEntry(call.tool, digest, 0.0, "E_EMPTY_RESULT"))
                self._halt("E_EMPTY_RESULT",
                           f"{call.tool} requires a non-empty {param.name}", call)

        start = time.perf_counter()
        try:
            result = impl(**kwargs)
        except ToolError as err:
            elapsed = (time.perf_counter() - start) * 1000.0
            self.trace.append(TraceEntry(call.tool, digest, elapsed, err.code))
            # keep the empty-collection category when the impl itself raised it
            category = "E_EMPTY_RESULT" if err.code == "E_EMPTY_RESULT" else "E_TOOL_FAIL"
            self._halt(category, f"{call.tool} failed: {err.message}", call)
        except Exception as err:  # noqa: BLE001 - impls are third-party code to us
            elapsed = (time.perf_counter() - start) * 1000.0
            self.trace.append(TraceEntry(call.tool, digest, elapsed, "E_TOOL_FAIL"))
            self._halt("E_TOOL_FAIL", f"{call.tool} raised {type(err).__name__}: {err}", call)
        elapsed = (time.perf_counter() - start) * 1000.0

        if not conforms(result, spec.returns):
            self.trace.append(TraceEntry(call.tool, digest, elapsed, "E_RUNTIME_TYPE"))
            self._halt("E_RUNTIME_TYPE",
                       f"{call.tool} returned a value outside {spec.returns}", call)
        self.trace.append(TraceEntry(call.tool, digest, elapsed, "ok"))
        return result

    def index(self, expr: ast.Index, env: dict):
        target = self.eval(expr.target, env)
        if isinstance(target, tuple):
            if len(target) == 2 and expr.index in (0, 1):
                return target[expr.index]
            self._halt("E_RUNTIME_TYPE", f"bad pair index {expr.index}", expr)
        if isinstance(target, list):
            out = []
            for item in target:
                if not isinstance(item, tuple) or len(item) != 2 or expr.index not in (0, 1):
                    self._halt("E_RUNTIME_TYPE",
                               "projection needs a list of pairs", expr)
                out.append(item[expr.index])
            return out
        self._halt("E_RUNTIME_TYPE", "index target is neither pair nor list", expr)

    def sample(self, expr: ast.Sample, env: dict):
        target = self.eval(expr.target, env)
        if not isinstance(target, list):
            self._halt("E_RUNTIME_TYPE", "sample target is not a list", expr)
        items = [v for v in target if not is_blank(v)]
        if len(items) > expr.k:
            stride = len(items) // expr.k
            items = items[::stride][: expr.k]
        return items

    def test(self, cond: ast.Cond, env: dict) -> bool:
        if isinstance(cond, ast.Not):
            return not self.test(cond.inner, env)
        value = self.eval(cond.target, env)
        if isinstance(value, (list, str)):
            return is_blank(value)
        self._halt("E_RUNTIME_TYPE", "empty() needs a list or text value", cond)

    def run_block(self, block: list[ast.Stmt], env: dict) -> None:
        scope = dict(env)
        for stmt in block:
            if isinstance(stmt, ast.Let):
                scope[stmt.name] = self.eval(stmt.expr, scope)
            elif isinstance(stmt, ast.Return):
                raise _ReturnSignal(self.eval(stmt.expr, scope))
            elif isinstance(stmt, ast.If):
                branch = stmt.then_block if self.test(stmt.cond, scope) else stmt.else_block
                if branch is not None:
                    self.run_block(branch, scope)
            elif isinstance(stmt, ast.ForEach):
                iterable = self.eval(stmt.iterable, scope)
                if not isinstance(iterable, list):
                    self._halt("E_RUNTIME_TYPE", "for needs a list value", stmt)
                for item in iterable:
                    inner = dict(scope)
                    inner[stmt.name] = item
                    self.run_block(stmt.body, inner)
            else:
                raise TypeError(f"unhandled statement node {type(stmt).__name__}")


def execute_plan(
    program: ast.PlanProgram,
    registry: ToolRegistry,
    bindings: dict[str, Callable] | None = None,
    call_budget: int | None = None,
):
    """Interpret a validated plan.

    Returns (result, runtime report, trace). On failure the result is None,
    the report carries the categorized diagnostic, and the trace covers every
    call made before the halt.
    """
    budget = DEFAULT_CONFIG.tool_call_budget if call_budget is None else call_budget
    interp = _Interp(registry, bindings or {}, budget)
    try:
        interp.run_block(program.statements, {})
    except _ReturnSignal as ret:
        return ret.value, ValidationReport("runtime", True), interp.trace
    except _Halt as halt:
        return None, ValidationReport("runtime", False, [halt.diag]), interp.trace
    # the structure checker proves every path returns; reaching here is a bug
    raise AssertionError("plan fell off the end without returning")
