"""Query templates accepted by the front door."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..corpus.types import CLAUSE_LABELS
from ..errors import ToolError

TASKS = (
    "explore_all",
    "find_master_agreements",
    "find_master_dates",
    "find_termination_dates",
    "find_parties",
    "find_clause",
    "summarize_clause",
    "compare_clause",
)
CLAUSE_TASKS = ("find_clause", "summarize_clause", "compare_clause")
ENTITY_KEYS = ("fund", "trust", "custodian")


@dataclass
class QuerySpec:
    task: str
    entities: dict[str, str] = field(default_factory=dict)
    clause_label: str | None = None
    hint: str | None = None

    def validate(self) -> None:
        if self.task not in TASKS:
            raise ToolError("E_BAD_QUERY", f"unknown task {self.task!r}", locus="task")
        unknown = sorted(set(self.entities) - set(ENTITY_KEYS))
        if unknown:
            raise ToolError("E_BAD_QUERY", f"unknown entity keys: {', '.join(unknown)}",
                            locus="entities")
        populated = {k: v for k, v in self.entities.items() if v}
        if not populated:
            raise ToolError("E_BAD_QUERY", "at least one entity must be given",
                            locus="entities")
        for key, value in populated.items():
            if not isinstance(value, str) or not value.strip():
                raise ToolError("E_BAD_QUERY", f"entity {key!r} must be a non-empty string",
                                locus="entities")
        if self.task in CLAUSE_TASKS:
            if not self.clause_label:
                raise ToolError("E_BAD_QUERY", f"task {self.task!r} needs clause_label",
                                locus="clause_label")
            if self.clause_label not in CLAUSE_LABELS:
                raise ToolError("E_BAD_QUERY",
                                f"unknown clause label {self.clause_label!r}",
                                locus="clause_label")
        elif self.clause_label:
            raise ToolError("E_BAD_QUERY",
                            f"task {self.task!r} does not take a clause label",
                            locus="clause_label")

    @classmethod
    def from_dict(cls, data: dict) -> "QuerySpec":
        if not isinstance(data, dict):
            raise ToolError("E_BAD_QUERY", "query body must be an object")
        extra = sorted(set(data) - {"task", "entities", "clause_label", "hint"})
        if extra:
            raise ToolError("E_BAD_QUERY", f"unknown fields: {', '.join(extra)}")
        entities = data.get("entities") or {}
        if not isinstance(entities, dict):
            raise ToolError("E_BAD_QUERY", "entities must be an object", locus="entities")
        spec = cls(
            task=str(data.get("task", "")),
            entities={str(k): str(v) for k, v in entities.items()},
            clause_label=data.get("clause_label") or None,
            hint=data.get("hint") or None,
        )
        spec.validate()
        return spec

    def to_dict(self) -> dict:
        out: dict = {"task": self.task, "entities": dict(self.entities)}
        if self.clause_label:
            out["clause_label"] = self.clause_label
        if self.hint:
            out["hint"] = self.hint
        return out
