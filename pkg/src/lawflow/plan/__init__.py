"""Plan DSL: grammar, registry, three-tier validation, interpreter, repair loop."""

from .interp import TraceEntry, execute_plan, trace_digest
from .parser import parse_plan
from .planner import (
    Attempt,
    MockPlanner,
    Planner,
    PlanRun,
    apply_repairs,
    compile_template,
    plan_and_repair,
)
from .registry import ToolParam, ToolRegistry, ToolSpec, default_registry
from .types import SemType, list_of, pair_of, parse_type, unifies
from .validate import Diagnostic, ValidationReport, check_tools, parse_report
from .values import ContractRef, SectionRef, conforms, digest_value, is_blank

__all__ = [
    "Attempt",
    "ContractRef",
    "Diagnostic",
    "MockPlanner",
    "PlanRun",
    "Planner",
    "SectionRef",
    "SemType",
    "ToolParam",
    "ToolRegistry",
    "ToolSpec",
    "TraceEntry",
    "ValidationReport",
    "apply_repairs",
    "check_tools",
    "compile_template",
    "conforms",
    "default_registry",
    "digest_value",
    "execute_plan",
    "is_blank",
    "list_of",
    "pair_of",
    "parse_plan",
    "parse_report",
    "parse_type",
    "plan_and_repair",
    "trace_digest",
    "unifies",
]
