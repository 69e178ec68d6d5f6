"""Runtime value model for the interpreter.

Plans manipulate opaque handles, not raw documents: a ContractRef names a
contract, a SectionRef carries one retrieved section with enough text for
the analysis tools to work on. Everything else is str/int/bool, CalendarDate,
tuples for pairs, and lists.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..extraction.dates import CalendarDate
from .types import SemType


@dataclass(frozen=True)
class ContractRef:
    contract_id: str


@dataclass(frozen=True)
class SectionRef:
    contract_id: str
    ordinal: int
    title_label: str
    heading_text: str
    body_text: str


def is_blank(value) -> bool:
    """Empty-ness as sample() and empty() see it."""
    if value is None:
        return True
    if isinstance(value, str):
        return not value.strip()
    if isinstance(value, SectionRef):
        return not value.body_text.strip()
    if isinstance(value, (list, tuple)):
        return len(value) == 0
    return False


def conforms(value, sem: SemType) -> bool:
    """Does a runtime value inhabit the declared semantic type?"""
    if sem.name in ("Str", "Text"):
        return isinstance(value, str)
    if sem.name == "Int":
        return isinstance(value, int) and not isinstance(value, bool)
    if sem.name == "Bool":
        return isinstance(value, bool)
    if sem.name == "Date":
        return isinstance(value, CalendarDate)
    if sem.name == "Contract":
        return isinstance(value, ContractRef)
    if sem.name == "Section":
        return isinstance(value, SectionRef)
    if sem.name == "List":
        return isinstance(value, list) and all(conforms(v, sem.args[0]) for v in value)
    if sem.name == "Pair":
        return (isinstance(value, tuple) and len(value) == 2
                and conforms(value[0], sem.args[0])
                and conforms(value[1], sem.args[1]))
    return False


def digest_value(value) -> str:
    """Compact deterministic rendering for trace args (no volatile parts)."""
    if isinstance(value, str):
        text = value if len(value) <= 40 else value[:37] + "..."
        return repr(text)
    if isinstance(value, bool) or isinstance(value, int):
        return repr(value)
    if isinstance(value, CalendarDate):
        return value.render()
    if isinstance(value, ContractRef):
        return f"Contract({value.contract_id})"
    if isinstance(value, SectionRef):
        return f"Section({value.contract_id}#{value.ordinal})"
    if isinstance(value, tuple):
        return "(" + ", ".join(digest_value(v) for v in value) + ")"
    if isinstance(value, list):
        if not value:
            return "[]"
        return f"[{digest_value(value[0])}, ...x{len(value)}]"
    return repr(value)
