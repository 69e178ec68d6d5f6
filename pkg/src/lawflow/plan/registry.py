"""Tool specifications and the registry plans are validated against.

A ToolSpec is the static contract (ordered params with semantic types,
return type, description, usage example); the implementation is a plain
callable attached when the registry is wired to a live corpus. Specs alone
are enough for the hallucination tier, so tests can validate plans without
any corpus.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .types import SemType, parse_type


@dataclass
class ToolParam:
    name: str
    type: SemType
    required: bool = True


@dataclass
class ToolSpec:
    name: str
    params: list[ToolParam]
    returns: SemType
    description: str
    example: str
    impl: Callable | None = None

    def param(self, name: str) -> ToolParam | None:
        return next((p for p in self.params if p.name == name), None)


@dataclass
class ToolRegistry:
    tools: dict[str, ToolSpec] = field(default_factory=dict)

    def register(self, spec: ToolSpec) -> None:
        if spec.name in self.tools:
            raise ValueError(f"duplicate tool name: {spec.name}")
        self.tools[spec.name] = spec

    def get(self, name: str) -> ToolSpec | None:
        return self.tools.get(name)

    def names(self) -> list[str]:
        return sorted(self.tools)

    def bind(self, name: str, impl: Callable) -> None:
        self.tools[name].impl = impl


def _spec(name: str, params: list[tuple[str, str, bool]], returns: str,
          description: str, example: str) -> ToolSpec:
    return ToolSpec(
        name=name,
        params=[ToolParam(n, parse_type(t), req) for n, t, req in params],
        returns=parse_type(returns),
        description=description,
        example=example,
    )


def default_registry() -> ToolRegistry:
    """The domain toolset; implementations are bound by the orchestrator."""
    registry = ToolRegistry()
    registry.register(_spec(
        "get_agreements_for",
        [("funds", "Str", False), ("trusts", "Str", False), ("custodians", "Str", False)],
        "List<Pair<Str,Contract>>",
        "All agreements involving the named fund, trust, or custodian; each "
        "item pairs a display string with the contract handle. At least one "
        "entity argument must be given.",
        'let agreements = get_agreements_for(funds="Oakfield Core Growth Fund")',
    ))
    registry.register(_spec(
        "get_dates",
        [("contracts", "List<Contract>", True), ("kind", "Str", True)],
        "List<Pair<Str,Date>>",
        "The requested date kind (effective, master, or dated) for each "
        "contract, paired with the contract id.",
        'let dates = get_dates(contracts=agreements[1], kind="master")',
    ))
    registry.register(_spec(
        "get_parties",
        [("contracts", "List<Contract>", True)],
        "List<Pair<Str,Str>>",
        "Deduplicated (role, name) pairs across the given contracts.",
        "let parties = get_parties(contracts=agreements[1])",
    ))
    registry.register(_spec(
        "get_lifecycle",
        [("contracts", "List<Contract>", True)],
        "List<Pair<Str,Str>>",
        "Per contract: its id paired with the termination date (DD/MM/YYYY) "
        "or the word evergreen.",
        "let lifecycles = get_lifecycle(contracts=agreements[1])",
    ))
    registry.register(_spec(
        "get_master",
        [("contracts", "List<Contract>", True)],
        "List<Pair<Str,Contract>>",
        "For each contract, its id paired with the resolved master contract.",
        "let masters = get_master(contracts=agreements[1])",
    ))
    registry.register(_spec(
        "get_section_v2",
        [("agg_list", "List<Contract>", True), ("section_name", "Str", True)],
        "List<Section>",
        "Best-matching section of the named clause from each contract, via "
        "per-contract BM25 retrieval over labeled sections.",
        'let sections = get_section_v2(agg_list=agreements[1], section_name="fees and expenses")',
    ))
    registry.register(_spec(
        "get_summary_v1",
        [("text_list", "List<Section>", True)],
        "Text",
        "Summary of the given sections, preserving entity names and dates.",
        "let summary = get_summary_v1(text_list=sections)",
    ))
    registry.register(_spec(
        "get_comparison_v1",
        [("list_agreement_tuples", "List<Pair<Str,Contract>>", True),
         ("text_list", "List<Section>", True)],
        "Text",
        "Chronological pairwise comparison of the given sections, attributed "
        "to their agreements.",
        "let output = get_comparison_v1(list_agreement_tuples=agreements, text_list=picked)",
    ))
    return registry
