"""Registry implementations bound over an ingested corpus snapshot.

build_bindings closes each tool over the document map, the section index,
the warmed cache, and the text client. A Capture object rides along so the
answer assembler can cite exactly what a plan touched without re-running it;
bindings are built per answer, so captures never cross queries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..agents.client import LlmClient
from ..agents.compare import ChainItem, ComparisonChain, compare_clauses
from ..agents.summarize import summarize
from ..config import DEFAULT_CONFIG, Config
from ..corpus.types import ContractDoc
from ..errors import ToolError
from ..extraction.dates import CalendarDate
from ..extraction.parties import normalize_name
from ..index.bm25 import SearchIndex, search_sections
from ..index.labels import canonical_label
from ..plan.values import ContractRef, SectionRef
from .cache import FeatureCache

_DATE_KINDS = ("effective", "master", "dated")


@dataclass
class Capture:
    """What a plan touched, for citations and rich payloads."""

    agreements: dict[str, str] = field(default_factory=dict)  # cid -> display
    sections: list[SectionRef] = field(default_factory=list)
    comparison: ComparisonChain | None = None


def _display(row) -> str:
    effective = row.effective_date or "unknown"
    return f"{row.contract_id} (effective {effective})"


def build_bindings(
    docs: dict[str, ContractDoc],
    index: SearchIndex,
    cache: FeatureCache,
    client: LlmClient,
    config: Config = DEFAULT_CONFIG,
    capture: Capture | None = None,
) -> dict[str, Callable]:
    capture = capture if capture is not None else Capture()

    def _row(ref: ContractRef):
        row = cache.row(ref.contract_id)
        if row is None:
            raise ToolError("E_UNKNOWN_CONTRACT", f"no cache row for {ref.contract_id}")
        return row

    def get_agreements_for(funds: str | None = None, trusts: str | None = None,
                           custodians: str | None = None) -> list:
        wanted = [(role, normalize_name(value))
                  for role, value in (("fund", funds), ("trust", trusts),
                                      ("custodian", custodians))
                  if value]
        if not wanted:
            raise ToolError("E_BAD_ARGS", "give at least one of funds/trusts/custodians")
        out = []
        for cid in sorted(cache.rows):
            row = cache.rows[cid]
            have = {(role, normalize_name(name)) for role, name in row.party_pairs()}
            if all(w in have for w in wanted):
                display = _display(row)
                capture.agreements[cid] = display
                out.append((display, ContractRef(cid)))
        return out

    def get_dates(contracts: list, kind: str) -> list:
        if kind not in _DATE_KINDS:
            raise ToolError("E_BAD_KIND",
                            f"kind must be one of {', '.join(_DATE_KINDS)}, got {kind!r}")
        out = []
        for ref in contracts:
            value = getattr(_row(ref), f"{kind}_date")
            if value:
                out.append((ref.contract_id, CalendarDate.parse(value)))
        return out

    def get_parties(contracts: list) -> list:
        pairs = set()
        for ref in contracts:
            pairs.update(_row(ref).party_pairs())
        return sorted(pairs)

    def get_lifecycle(contracts: list) -> list:
        out = []
        for ref in contracts:
            row = _row(ref)
            if row.evergreen == "true":
                out.append((ref.contract_id, "evergreen"))
            elif row.termination_date:
                out.append((ref.contract_id, row.termination_date))
        return out

    def get_master(contracts: list) -> list:
        out = []
        for ref in contracts:
            row = _row(ref)
            if row.master_id:
                out.append((ref.contract_id, ContractRef(row.master_id)))
        return out

    def get_section_v2(agg_list: list, section_name: str) -> list:
        label = canonical_label(section_name)
        out = []
        for ref in agg_list:
            hits = search_sections(index, ref.contract_id, section_name,
                                   k=config.search_top_k, k1=config.bm25_k1,
                                   b=config.bm25_b,
                                   title_weight=config.title_term_weight)
            pick = None
            if label is not None:
                # canonical clause: only a section labeled as it counts
                pick = next((e for e, s in hits if e.title_label == label and s > 0), None)
            elif hits and hits[0][1] > 0:
                pick = hits[0][0]
            if pick is None:
                out.append(SectionRef(ref.contract_id, -1, section_name, "", ""))
                continue
            doc = docs.get(ref.contract_id)
            span = doc.sections[pick.ordinal] if doc else None
            if span is None or span.ordinal != pick.ordinal:
                raise ToolError("E_STALE_INDEX",
                                f"index and store disagree on {ref.contract_id}")
            sref = SectionRef(ref.contract_id, span.ordinal, span.title_label,
                              span.heading_text, span.body_text)
            capture.sections.append(sref)
            out.append(sref)
        return out

    def get_summary_v1(text_list: list) -> str:
        texts = [s.body_text for s in text_list if s.body_text.strip()]
        if not texts:
            raise ToolError("E_EMPTY_RESULT", "no non-empty sections to summarize")
        return summarize(texts, client=client,
                         parallelism=config.subagent_parallelism)

    def get_comparison_v1(list_agreement_tuples: list, text_list: list) -> str:
        display = {ref.contract_id: shown for shown, ref in list_agreement_tuples}
        items = []
        for sref in text_list:
            if not sref.body_text.strip():
                continue
            row = cache.row(sref.contract_id)
            if row is None or not row.effective_date:
                continue
            items.append(ChainItem(sref.contract_id, CalendarDate.parse(row.effective_date),
                                   sref.body_text, sref.ordinal))
        if not items:
            raise ToolError("E_EMPTY_RESULT", "no non-empty sections to compare")
        chain = compare_clauses(items, client=client)
        capture.comparison = chain
        lines = [f"Compared {len(chain.items)} sections in effective-date order."]
        if not chain.deltas:
            lines.append("Only one section qualified; nothing to compare it against.")
        for delta in chain.deltas:
            left = display.get(delta.left_id, delta.left_id)
            right = display.get(delta.right_id, delta.right_id)
            lines.append(f"{left} vs {right}: {delta.narrative}")
        return "\n".join(lines)

    return {
        "get_agreements_for": get_agreements_for,
        "get_dates": get_dates,
        "get_parties": get_parties,
        "get_lifecycle": get_lifecycle,
        "get_master": get_master,
        "get_section_v2": get_section_v2,
        "get_summary_v1": get_summary_v1,
        "get_comparison_v1": get_comparison_v1,
    }
