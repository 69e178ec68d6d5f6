"""Static tool checking for parsed plans.

Tier two of validation: every call site is checked against the registry
before anything executes. Unknown tools, bad keywords, missing required
arguments, and type mismatches are all caught here with a locus, so a
repair pass has something concrete to act on.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import PlanError
from ..extraction.parties import levenshtein
from . import ast
from .parser import parse_plan
from .registry import ToolRegistry
from .types import BOOL, INT, STR, TEXT, SemType, list_of, unifies

# misspellings farther than this from any real name get no suggestion
_SUGGEST_DISTANCE = 3


@dataclass
class Diagnostic:
    code: str
    message: str
    locus: str
    suggestion: str | None = None

    def to_dict(self) -> dict:
        out = {"code": self.code, "message": self.message, "locus": self.locus}
        if self.suggestion is not None:
            out["suggestion"] = self.suggestion
        return out


@dataclass
class ValidationReport:
    tier: str
    passed: bool
    diagnostics: list[Diagnostic] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "tier": self.tier,
            "passed": self.passed,
            "diagnostics": [d.to_dict() for d in self.diagnostics],
        }


def parse_report(source: str, statement_cap: int | None = None):
    """Run the syntax tier, packaging the outcome as a report."""
    try:
        program = parse_plan(source, statement_cap)
    except PlanError as err:
        diag = Diagnostic(err.code, err.message, f"line {err.line}, column {err.column}")
        return None, ValidationReport("syntax", False, [diag])
    return program, ValidationReport("syntax", True)


def suggest_name(name: str, candidates: list[str]) -> str | None:
    best: str | None = None
    best_dist = _SUGGEST_DISTANCE + 1
    for cand in sorted(candidates):
        dist = levenshtein(name, cand)
        if dist < best_dist:
            best, best_dist = cand, dist
    return best


class _Checker:
    def __init__(self, registry: ToolRegistry):
        self.registry = registry
        self.diags: list[Diagnostic] = []

    def _at(self, node: ast.Node) -> str:
        return f"line {node.line}, column {node.column}"

    def _flag(self, code: str, message: str, node: ast.Node,
              suggestion: str | None = None) -> None:
        self.diags.append(Diagnostic(code, message, self._at(node), suggestion))

    # expression typing; None means an earlier diagnostic already fired
    # for this subtree and cascading complaints would just be noise

    def infer(self, expr: ast.Expr, env: dict[str, SemType | None]) -> SemType | None:
        if isinstance(expr, ast.Literal):
            if isinstance(expr.value, bool):
                return BOOL
            if isinstance(expr.value, int):
                return INT
            return STR
        if isinstance(expr, ast.Var):
            return env.get(expr.name)
        if isinstance(expr, ast.Call):
            return self._infer_call(expr, env)
        if isinstance(expr, ast.Index):
            return self._infer_index(expr, env)
        if isinstance(expr, ast.Sample):
            target = self.infer(expr.target, env)
            if expr.k < 1:
                self._flag("E_TYPE_MISMATCH", "sample size must be at least 1", expr)
                return None
            if target is None:
                return None
            if target.name != "List":
                self._flag("E_TYPE_MISMATCH",
                           f"sample() needs a list, got {target}", expr)
                return None
            return target
        raise TypeError(f"unhandled expression node {type(expr).__name__}")

    def _infer_call(self, call: ast.Call, env: dict) -> SemType | None:
        spec = self.registry.get(call.tool)
        if spec is None:
            hint = suggest_name(call.tool, self.registry.names())
            msg = f"unknown tool {call.tool!r}"
            if hint:
                msg += f"; did you mean {hint!r}?"
            self._flag("E_UNKNOWN_TOOL", msg, call, hint)
            for _, value in call.kwargs:
                self.infer(value, env)
            return None
        seen: set[str] = set()
        ok = True
        for kw, value in call.kwargs:
            actual = self.infer(value, env)
            param = spec.param(kw)
            if param is None:
                hint = suggest_name(kw, [p.name for p in spec.params])
                msg = f"{call.tool} has no keyword {kw!r}"
                if hint:
                    msg += f"; did you mean {hint!r}?"
                self._flag("E_BAD_KWARG", msg, value, hint)
                ok = False
                continue
            if kw in seen:
                self._flag("E_BAD_KWARG", f"duplicate keyword {kw!r}", value)
                ok = False
                continue
            seen.add(kw)
            if actual is not None and not unifies(actual, param.type):
                self._flag(
                    "E_TYPE_MISMATCH",
                    f"{call.tool} expects {kw}: {param.type}, got {actual}",
                    value)
                ok = False
        missing = [p.name for p in spec.params if p.required and p.name not in seen]
        if missing:
            self._flag("E_BAD_ARITY",
                       f"{call.tool} missing required {', '.join(missing)}", call)
            ok = False
        if not any(p.required for p in spec.params) and not seen:
            self._flag("E_BAD_ARITY",
                       f"{call.tool} needs at least one argument", call)
            ok = False
        return spec.returns if ok else None

    def _infer_index(self, expr: ast.Index, env: dict) -> SemType | None:
        target = self.infer(expr.target, env)
        if target is None:
            return None
        if target.name == "Pair":
            if expr.index in (0, 1):
                return target.args[expr.index]
            self._flag("E_TYPE_MISMATCH",
                       f"pair index must be 0 or 1, got {expr.index}", expr)
            return None
        # projection: List<Pair<A,B>>[i] lifts the component over the list
        if target.name == "List" and target.args[0].name == "Pair":
            if expr.index in (0, 1):
                return list_of(target.args[0].args[expr.index])
            self._flag("E_TYPE_MISMATCH",
                       f"pair index must be 0 or 1, got {expr.index}", expr)
            return None
        self._flag("E_TYPE_MISMATCH", f"cannot index into {target}", expr)
        return None

    def check_cond(self, cond: ast.Cond, env: dict) -> None:
        if isinstance(cond, ast.Not):
            self.check_cond(cond.inner, env)
            return
        target = self.infer(cond.target, env)
        if target is None:
            return
        if target.name != "List" and not unifies(target, TEXT):
            self._flag("E_TYPE_MISMATCH",
                       f"empty() needs a list or text, got {target}", cond)

    def check_block(self, block: list[ast.Stmt], env: dict) -> None:
        scope = dict(env)
        for stmt in block:
            if isinstance(stmt, ast.Let):
                scope[stmt.name] = self.infer(stmt.expr, scope)
            elif isinstance(stmt, ast.Return):
                self.infer(stmt.expr, scope)
            elif isinstance(stmt, ast.If):
                self.check_cond(stmt.cond, scope)
                self.check_block(stmt.then_block, scope)
                if stmt.else_block is not None:
                    self.check_block(stmt.else_block, scope)
            elif isinstance(stmt, ast.ForEach):
                iterable = self.infer(stmt.iterable, scope)
                item: SemType | None = None
                if iterable is not None:
                    if iterable.name == "List":
                        item = iterable.args[0]
                    else:
                        self._flag("E_TYPE_MISMATCH",
                                   f"for needs a list, got {iterable}", stmt)
                inner = dict(scope)
                inner[stmt.name] = item
                self.check_block(stmt.body, inner)
            else:
                raise TypeError(f"unhandled statement node {type(stmt).__name__}")


def check_tools(program: ast.PlanProgram, registry: ToolRegistry) -> ValidationReport:
    """Validate every call site against the registry; static types only."""
    checker = _Checker(registry)
    checker.check_block(program.statements, {})
    return ValidationReport("hallucination", not checker.diags, checker.diags)
