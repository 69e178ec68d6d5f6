"""The front door: snapshots, entity resolution, and query answering.

An Engine owns an immutable Snapshot (store, docs, index, cache, party
registry). Re-ingest builds a whole new snapshot and swaps the reference
under a lock, so in-flight queries keep a consistent view. answer() resolves
entities, runs the plan loop, and assembles an envelope with citations that
point at real section spans.
"""

from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import dataclass, field
from pathlib import Path

from ..agents.client import LlmClient, make_client
from ..config import DEFAULT_CONFIG, Config
from ..corpus.store import CorpusStore, ingest_documents
from ..corpus.synth import generate_corpus, registry_entries
from ..corpus.types import ContractDoc, CorpusManifest
from ..errors import ToolError
from ..extraction.dates import CalendarDate
from ..extraction.parties import RegistryEntry, normalize_name, similarity
from ..index.bm25 import SearchIndex, build_index, load_index, save_index, search_sections
from ..index.labels import KeywordLabeler, LabeledSection, canonical_label
from ..plan.planner import MockPlanner, Planner, plan_and_repair
from ..plan.registry import ToolRegistry, default_registry
from ..plan.values import ContractRef, SectionRef
from .cache import FeatureCache, warm_cache
from .query import ENTITY_KEYS, QuerySpec
from .tools import Capture, build_bindings

INDEX_NAME = "index.json"


@dataclass
class Snapshot:
    store: CorpusStore
    docs: dict[str, ContractDoc]
    index: SearchIndex
    cache: FeatureCache
    registry_entries: list[RegistryEntry]
    manifest: CorpusManifest | None = None


@dataclass
class AnswerEnvelope:
    query: dict
    result: object
    result_kind: str
    plan_source: str
    reports: list[dict]
    trace: list[dict]
    citations: list[dict]
    attempts: list[dict]
    comparison: dict | None = None

    def to_dict(self) -> dict:
        out = {
            "query": self.query,
            "result": self.result,
            "result_kind": self.result_kind,
            "plan_source": self.plan_source,
            "reports": self.reports,
            "trace": self.trace,
            "citations": self.citations,
            "attempts": self.attempts,
        }
        if self.comparison is not None:
            out["comparison"] = self.comparison
        return out

    def digest(self) -> str:
        payload = json.dumps(_strip_durations(self.to_dict()), sort_keys=True)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def _strip_durations(obj):
    if isinstance(obj, dict):
        return {k: _strip_durations(v) for k, v in obj.items() if k != "duration_ms"}
    if isinstance(obj, list):
        return [_strip_durations(v) for v in obj]
    return obj


def jsonify_value(value):
    """Runtime plan values to plain JSON types."""
    if isinstance(value, CalendarDate):
        return value.render()
    if isinstance(value, ContractRef):
        return {"contract_id": value.contract_id}
    if isinstance(value, SectionRef):
        return {
            "contract_id": value.contract_id,
            "ordinal": value.ordinal,
            "title_label": value.title_label,
            "heading_text": value.heading_text,
            "body_text": value.body_text,
        }
    if isinstance(value, (list, tuple)):
        return [jsonify_value(v) for v in value]
    return value


def _result_kind(value) -> str:
    if isinstance(value, str):
        return "text"
    if isinstance(value, list):
        if not value:
            return "empty"
        head = value[0]
        if isinstance(head, SectionRef):
            return "sections"
        if isinstance(head, tuple) and len(head) == 2:
            second = head[1]
            if isinstance(second, ContractRef):
                return "contract_pairs"
            if isinstance(second, CalendarDate):
                return "date_pairs"
            return "string_pairs"
    return "value"


def load_snapshot(root: str | Path, config: Config = DEFAULT_CONFIG) -> Snapshot:
    """Open an ingested corpus, building index and cache if absent."""
    store = CorpusStore(root)
    docs = {d.contract_id: d for d in store.load_all()}
    if not docs:
        raise ToolError("E_NOT_READY", f"no contracts ingested under {root}")
    entries = [RegistryEntry(e["name"], e["role"]) for e in store.load_registry()]
    if not entries:
        raise ToolError("E_NOT_READY", "parties.json missing or empty; re-ingest")

    index_path = Path(root) / INDEX_NAME
    if index_path.exists():
        index = load_index(index_path)
    else:
        labeled = [LabeledSection(span, 1.0)
                   for doc in docs.values() for span in doc.sections]
        index = build_index(labeled)
        save_index(index, index_path)

    try:
        cache = FeatureCache.load(root)
    except ToolError:
        cache = warm_cache(sorted(docs.values(), key=lambda d: d.contract_id),
                           entries, config)
        cache.save(root)

    manifest = store.load_manifest() if store.has_manifest() else None
    return Snapshot(store, docs, index, cache, entries, manifest)


def build_snapshot_from_docs(
    root: str | Path,
    docs: list[ContractDoc],
    entries: list[RegistryEntry],
    manifest: CorpusManifest | None = None,
    config: Config = DEFAULT_CONFIG,
) -> Snapshot:
    """Ingest documents fresh and produce a ready snapshot (persisted)."""
    store = CorpusStore(root)
    labeler = KeywordLabeler(threshold=config.label_score_threshold)
    prepared = ingest_documents(docs, store=store, labeler=labeler)
    store.save_registry([{"name": e.name, "role": e.role} for e in entries])
    if manifest is not None:
        store.save_manifest(manifest)
    doc_map = {d.contract_id: d for d in prepared}
    labeled = [LabeledSection(span, 1.0)
               for doc in prepared for span in doc.sections]
    index = build_index(labeled)
    save_index(index, Path(root) / INDEX_NAME)
    cache = warm_cache(prepared, entries, config)
    cache.save(root)
    return Snapshot(store, doc_map, index, cache, entries, manifest)


class Engine:
    def __init__(self, snapshot: Snapshot, config: Config = DEFAULT_CONFIG,
                 planner: Planner | None = None, client: LlmClient | None = None,
                 registry: ToolRegistry | None = None):
        self.config = config
        self.registry = registry or default_registry()
        self.planner = planner or MockPlanner()
        self.client = client or make_client(
            config.llm_client, [e.name for e in snapshot.registry_entries])
        self._lock = threading.Lock()
        self._snapshot = snapshot

    @classmethod
    def open(cls, root: str | Path, config: Config = DEFAULT_CONFIG, **kw) -> "Engine":
        return cls(load_snapshot(root, config), config, **kw)

    @property
    def snapshot(self) -> Snapshot:
        return self._snapshot

    def swap_snapshot(self, snapshot: Snapshot) -> None:
        with self._lock:
            self._snapshot = snapshot
            # the client's party list tracks the corpus
            self.client = make_client(
                self.config.llm_client, [e.name for e in snapshot.registry_entries])

    def rebuild_synthetic(self, seed: int, n_contracts: int | None = None,
                          n_families: int | None = None) -> Snapshot:
        """Regenerate the synthetic corpus in place and swap to it."""
        if n_contracts is None and n_families is None:
            n_families = 12
        docs, manifest = generate_corpus(seed, n_families=n_families,
                                         n_contracts=n_contracts)
        entries = [RegistryEntry(e["name"], e["role"])
                   for e in registry_entries(manifest)]
        snapshot = build_snapshot_from_docs(self._snapshot.store.root, docs,
                                            entries, manifest, self.config)
        self.swap_snapshot(snapshot)
        return snapshot

    # -- entity resolution ------------------------------------------------

    def resolve_entity(self, role: str, name: str) -> str:
        snap = self._snapshot
        target = normalize_name(name)
        best_name, best_score = None, 0.0
        for entry in snap.registry_entries:
            if entry.role != role:
                continue
            norm = normalize_name(entry.name)
            if norm == target:
                return entry.name
            score = similarity(norm, target)
            if score > best_score or (score == best_score and best_name is not None
                                      and entry.name < best_name):
                best_name, best_score = entry.name, score
        if best_name is not None and best_score >= self.config.party_similarity_threshold:
            return best_name
        raise ToolError("E_UNKNOWN_ENTITY", f"no {role} matches {name!r}", locus=role)

    def _resolve_query(self, query: QuerySpec) -> QuerySpec:
        resolved = {}
        for key in ENTITY_KEYS:
            value = query.entities.get(key)
            if value:
                resolved[key] = self.resolve_entity(key, value)
        return QuerySpec(query.task, resolved, query.clause_label, query.hint)

    # -- answering ---------------------------------------------------------

    def answer(self, query: QuerySpec) -> AnswerEnvelope:
        query.validate()
        snap = self._snapshot
        resolved = self._resolve_query(query)
        capture = Capture()
        bindings = build_bindings(snap.docs, snap.index, snap.cache, self.client,
                                  self.config, capture)
        run = plan_and_repair(resolved, self.planner, self.registry, bindings,
                              self.config.max_repair_attempts,
                              self.config.tool_call_budget)
        if not run.ok:
            last = run.reports[-1].diagnostics if run.reports else []
            detail = "; ".join(d.message for d in last) or "no diagnostics"
            raise ToolError("E_EXHAUSTED",
                            f"planning failed after {len(run.attempts)} attempts: {detail}",
                            locus=query.task)
        comparison = None
        if capture.comparison is not None:
            chain = capture.comparison
            comparison = {
                "items": [
                    {"contract_id": it.contract_id, "effective": it.effective.render(),
                     "ordinal": it.ordinal}
                    for it in chain.items
                ],
                "deltas": [
                    {
                        "left_id": d.left_id,
                        "right_id": d.right_id,
                        "narrative": d.narrative,
                        "diff": {
                            "only_left": d.diff.only_left,
                            "only_right": d.diff.only_right,
                            "changed_literals": [list(p) for p in d.diff.changed_literals],
                        },
                    }
                    for d in chain.deltas
                ],
            }
        return AnswerEnvelope(
            query=resolved.to_dict(),
            result=jsonify_value(run.result),
            result_kind=_result_kind(run.result),
            plan_source=run.source or "",
            reports=[r.to_dict() for r in run.reports],
            trace=[e.to_dict() for e in run.trace],
            citations=self._citations(resolved.task, capture, snap),
            attempts=[a.to_dict() for a in run.attempts],
            comparison=comparison,
        )

    def _citations(self, task: str, capture: Capture, snap: Snapshot) -> list[dict]:
        cites: set[tuple[str, int]] = set()
        for sref in capture.sections:
            if sref.ordinal >= 0:
                cites.add((sref.contract_id, sref.ordinal))
        prov_key = {
            "find_master_dates": "master",
            "find_master_agreements": "master",
            "find_termination_dates": "termination",
        }.get(task)
        for cid in capture.agreements:
            prov = snap.cache.provenance.get(cid, {})
            if task == "explore_all":
                cites.add((cid, 0))
            elif prov_key is not None:
                ordinal = prov.get(prov_key)
                if ordinal is not None:
                    cites.add((cid, ordinal))
            elif task == "find_parties":
                for ordinal in (prov.get("parties") or {}).values():
                    if ordinal is not None:
                        cites.add((cid, ordinal))
        return [{"contract_id": cid, "ordinal": ordinal}
                for cid, ordinal in sorted(cites)]

    # -- browse endpoints behind the HTTP service --------------------------

    def list_contracts(self) -> list[dict]:
        snap = self._snapshot
        out = []
        for cid in sorted(snap.docs):
            row = snap.cache.row(cid)
            item = {"contract_id": cid, "sections": len(snap.docs[cid].sections)}
            if row is not None:
                item.update({
                    "accession_no": row.accession_no,
                    "effective_date": row.effective_date,
                    "master_date": row.master_date,
                    "termination_date": row.termination_date,
                    "evergreen": row.evergreen,
                    "is_master": row.is_master,
                    "master_id": row.master_id,
                    "parties": snap.cache.parties_detail.get(cid, []),
                })
            out.append(item)
        return out

    def contract_detail(self, contract_id: str) -> dict:
        snap = self._snapshot
        doc = snap.docs.get(contract_id)
        if doc is None:
            raise ToolError("E_UNKNOWN_CONTRACT", f"no contract {contract_id!r}",
                            locus=contract_id)
        row = snap.cache.row(contract_id)
        return {
            "contract_id": contract_id,
            "accession_no": doc.accession_no,
            "source_uri": doc.source_uri,
            "filed_date": doc.filed_date,
            "cache_row": row.as_tuple() if row else None,
            "parties": snap.cache.parties_detail.get(contract_id, []),
            "sections": [
                {"ordinal": s.ordinal, "heading_text": s.heading_text,
                 "title_label": s.title_label, "start_offset": s.start_offset,
                 "end_offset": s.end_offset}
                for s in doc.sections
            ],
        }

    def contract_sections(self, contract_id: str, clause: str | None = None) -> list[dict]:
        snap = self._snapshot
        doc = snap.docs.get(contract_id)
        if doc is None:
            raise ToolError("E_UNKNOWN_CONTRACT", f"no contract {contract_id!r}",
                            locus=contract_id)
        spans = doc.sections
        scores: dict[int, float] = {}
        if clause:
            label = canonical_label(clause)
            if label is not None:
                spans = [s for s in spans if s.title_label == label]
            else:
                hits = search_sections(snap.index, contract_id, clause,
                                       k=self.config.search_top_k)
                scores = {e.ordinal: s for e, s in hits if s > 0}
                spans = [s for s in spans if s.ordinal in scores]
        return [
            {"ordinal": s.ordinal, "heading_text": s.heading_text,
             "title_label": s.title_label, "body_text": s.body_text,
             **({"score": scores[s.ordinal]} if s.ordinal in scores else {})}
            for s in spans
        ]
