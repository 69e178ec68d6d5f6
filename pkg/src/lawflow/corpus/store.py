"""On-disk corpus layout and the parallel ingestion pipeline.

Layout, one directory per contract under ``contracts/``:

    <root>/
      manifest.json          ground truth (eval side only)
      parties.json           known (name, role) registry for the matcher
      contracts/<id>/
        contract.html        raw markup as fetched or generated
        contract.txt         normalized plain text
        meta.json            identifiers, filing date, metadata parties
        sections.json        ordered SectionSpan records

All JSON is UTF-8 with sorted keys. Writes go through a temp file plus
os.replace so concurrent readers never observe a torn file; a per-contract
lock keeps this store single-writer per contract_id within a process.
"""

from __future__ import annotations

import json
import os
import threading
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .markup import normalize_markup
from .sectionize import sectionize
from .types import ContractDoc, CorpusManifest, SectionSpan

_MANIFEST = "manifest.json"
_REGISTRY = "parties.json"
_CONTRACTS = "contracts"


def _write_json(path: Path, payload) -> None:
    _write_text(path, json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n")


def _write_text(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


class CorpusStore:
    """Filesystem-backed contract corpus; concurrent readers, one writer per id."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        (self.root / _CONTRACTS).mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _lock_for(self, contract_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(contract_id, threading.Lock())

    def _dir(self, contract_id: str) -> Path:
        if not contract_id or "/" in contract_id or contract_id.startswith("."):
            raise ValueError(f"bad contract_id: {contract_id!r}")
        return self.root / _CONTRACTS / contract_id

    # -- contracts -----------------------------------------------------------

    def save_contract(self, doc: ContractDoc) -> None:
        cdir = self._dir(doc.contract_id)
        with self._lock_for(doc.contract_id):
            cdir.mkdir(parents=True, exist_ok=True)
            _write_text(cdir / "contract.html", doc.raw_markup)
            _write_text(cdir / "contract.txt", doc.plain_text)
            _write_json(cdir / "meta.json", {
                "contract_id": doc.contract_id,
                "accession_no": doc.accession_no,
                "source_uri": doc.source_uri,
                "filed_date": doc.filed_date,
                "metadata_parties": doc.metadata_parties,
            })
            _write_json(cdir / "sections.json", [s.to_dict() for s in doc.sections])

    def load_contract(self, contract_id: str) -> ContractDoc:
        cdir = self._dir(contract_id)
        if not cdir.is_dir():
            raise KeyError(contract_id)
        meta = json.loads((cdir / "meta.json").read_text(encoding="utf-8"))
        sections = [
            SectionSpan.from_dict(d)
            for d in json.loads((cdir / "sections.json").read_text(encoding="utf-8"))
        ]
        return ContractDoc(
            contract_id=meta["contract_id"],
            accession_no=meta["accession_no"],
            source_uri=meta["source_uri"],
            raw_markup=(cdir / "contract.html").read_text(encoding="utf-8"),
            plain_text=(cdir / "contract.txt").read_text(encoding="utf-8"),
            filed_date=meta["filed_date"],
            metadata_parties=meta["metadata_parties"],
            sections=sections,
        )

    def contract_ids(self) -> list[str]:
        base = self.root / _CONTRACTS
        return sorted(p.name for p in base.iterdir() if p.is_dir())

    def load_all(self) -> list[ContractDoc]:
        return [self.load_contract(cid) for cid in self.contract_ids()]

    # -- corpus-level artifacts ----------------------------------------------

    def save_manifest(self, manifest: CorpusManifest) -> None:
        _write_json(self.root / _MANIFEST, manifest.to_dict())

    def load_manifest(self) -> CorpusManifest:
        return CorpusManifest.from_dict(
            json.loads((self.root / _MANIFEST).read_text(encoding="utf-8"))
        )

    def has_manifest(self) -> bool:
        return (self.root / _MANIFEST).is_file()

    def save_registry(self, entries: list[dict]) -> None:
        _write_json(self.root / _REGISTRY, entries)

    def load_registry(self) -> list[dict]:
        return json.loads((self.root / _REGISTRY).read_text(encoding="utf-8"))


def prepare_document(doc: ContractDoc, labeler=None) -> ContractDoc:
    """Normalize, sectionize, and optionally label one contract in place.

    Pure per-document work so ingestion can fan out over a worker pool. The
    labeler, when given, is any object with label(span: SectionSpan) -> str;
    the classifier itself lives behind the index module's interface.
    """
    if not doc.plain_text:
        doc.plain_text = normalize_markup(doc.raw_markup)
    doc.sections = sectionize(doc)
    if labeler is not None:
        for span in doc.sections:
            span.title_label = labeler.label(span)
    return doc


def ingest_documents(
    docs: list[ContractDoc],
    store: CorpusStore | None = None,
    labeler=None,
    workers: int = 4,
) -> list[ContractDoc]:
    """Prepare documents in parallel, merge by contract_id, optionally persist.

    Output ordering is by contract_id regardless of worker interleaving, so a
    pool of any size produces the same corpus as sequential ingestion.
    """
    ids = [d.contract_id for d in docs]
    if len(set(ids)) != len(ids):
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        raise ValueError(f"duplicate contract_id in ingest batch: {dupes}")
    if workers <= 1:
        prepared = [prepare_document(d, labeler) for d in docs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            prepared = list(pool.map(lambda d: prepare_document(d, labeler), docs))
    merged = {d.contract_id: d for d in prepared}
    out = [merged[cid] for cid in sorted(merged)]
    if store is not None:
        for doc in out:
            store.save_contract(doc)
    return out
