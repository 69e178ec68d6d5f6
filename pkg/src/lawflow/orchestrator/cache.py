"""The feature cache: one flat CSV row per contract, warmed in batch.

The CSV is the canonical flat view (RFC 4180, header row, UTF-8, LF). Three
JSON sidecars ride along: per-contract extraction errors, the lossless
role/name party list, and provenance (which section ordinal evidences each
cached fact) so answers can cite real spans without re-extracting.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from ..config import DEFAULT_CONFIG, Config
from ..corpus.types import ContractDoc
from ..errors import ToolError
from ..extraction.dates import DateBundle, extract_dates
from ..extraction.parties import RegistryEntry, extract_parties
from ..multihop import compute_lifecycle, features_for, resolve_master

COLUMNS = (
    "contract_id",
    "accession_no",
    "effective_date",
    "master_date",
    "dated_date",
    "termination_date",
    "evergreen",
    "is_master",
    "master_id",
    "parties",
)

CSV_NAME = "cache.csv"
ERRORS_NAME = "cache_errors.json"
PARTIES_NAME = "cache_parties.json"
PROVENANCE_NAME = "cache_provenance.json"


@dataclass
class CacheRow:
    contract_id: str
    accession_no: str = ""
    effective_date: str = ""
    master_date: str = ""
    dated_date: str = ""
    termination_date: str = ""
    evergreen: str = ""
    is_master: str = ""
    master_id: str = ""
    parties: str = ""

    def as_tuple(self) -> tuple[str, ...]:
        return tuple(getattr(self, c) for c in COLUMNS)

    def party_pairs(self) -> list[tuple[str, str]]:
        out = []
        for item in self.parties.split(";"):
            if item and ":" in item:
                role, name = item.split(":", 1)
                out.append((role, name))
        return out


@dataclass
class FeatureCache:
    rows: dict[str, CacheRow] = field(default_factory=dict)
    errors: dict[str, list[dict]] = field(default_factory=dict)
    parties_detail: dict[str, list[dict]] = field(default_factory=dict)
    provenance: dict[str, dict] = field(default_factory=dict)

    def row(self, contract_id: str) -> CacheRow | None:
        return self.rows.get(contract_id)

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(COLUMNS)
        for cid in sorted(self.rows):
            writer.writerow(self.rows[cid].as_tuple())
        return buf.getvalue()

    @classmethod
    def from_csv_text(cls, text: str) -> "FeatureCache":
        reader = csv.reader(io.StringIO(text))
        header = next(reader, None)
        if header != list(COLUMNS):
            raise ToolError("E_CACHE_FORMAT", "unexpected cache header", locus=CSV_NAME)
        cache = cls()
        for raw in reader:
            if len(raw) != len(COLUMNS):
                raise ToolError("E_CACHE_FORMAT", f"bad row width {len(raw)}", locus=CSV_NAME)
            row = CacheRow(**dict(zip(COLUMNS, raw)))
            cache.rows[row.contract_id] = row
        return cache

    def save(self, root: str | Path) -> None:
        root = Path(root)
        root.mkdir(parents=True, exist_ok=True)
        payloads = [
            (root / CSV_NAME, self.to_csv_text()),
            (root / ERRORS_NAME, json.dumps(self.errors, indent=2, sort_keys=True) + "\n"),
            (root / PARTIES_NAME, json.dumps(self.parties_detail, indent=2, sort_keys=True) + "\n"),
            (root / PROVENANCE_NAME, json.dumps(self.provenance, indent=2, sort_keys=True) + "\n"),
        ]
        for path, text in payloads:
            tmp = path.with_name(path.name + ".tmp")
            tmp.write_text(text, encoding="utf-8")
            os.replace(tmp, path)

    @classmethod
    def load(cls, root: str | Path) -> "FeatureCache":
        root = Path(root)
        csv_path = root / CSV_NAME
        if not csv_path.exists():
            raise ToolError("E_CACHE_FORMAT", "cache.csv not found", locus=str(csv_path))
        cache = cls.from_csv_text(csv_path.read_text(encoding="utf-8"))
        for name, attr in ((ERRORS_NAME, "errors"), (PARTIES_NAME, "parties_detail"),
                           (PROVENANCE_NAME, "provenance")):
            path = root / name
            if path.exists():
                setattr(cache, attr, json.loads(path.read_text(encoding="utf-8")))
        return cache


def _ordinal_at(doc: ContractDoc, offset: int) -> int | None:
    for span in doc.sections:
        if span.start_offset <= offset < span.end_offset:
            return span.ordinal
    return None


def _label_ordinal(doc: ContractDoc, label: str) -> int | None:
    for span in doc.sections:
        if span.title_label == label:
            return span.ordinal
    return None


def warm_cache(
    docs: list[ContractDoc],
    registry: list[RegistryEntry],
    config: Config = DEFAULT_CONFIG,
) -> FeatureCache:
    """Batch-extract features for every contract; failures degrade per row."""
    cache = FeatureCache()
    bundles: dict[str, DateBundle] = {}
    party_records: dict[str, list] = {}

    def record_error(cid: str, stage: str, err: ToolError) -> None:
        cache.errors.setdefault(cid, []).append(
            {"stage": stage, "code": err.code, "message": err.message})

    for doc in docs:
        cid = doc.contract_id
        row = CacheRow(contract_id=cid, accession_no=doc.accession_no)
        prov: dict = {"parties": {}}

        try:
            bundle = extract_dates(doc.plain_text, cue_window=config.date_cue_window)
        except ToolError as err:
            record_error(cid, "dates", err)
            bundle = DateBundle()
        bundles[cid] = bundle
        for kind in ("effective", "master", "dated"):
            date = getattr(bundle, kind)
            if date is not None:
                setattr(row, f"{kind}_date", date.render())
            ev = bundle.evidence.get(kind)
            prov[kind] = _ordinal_at(doc, ev.start) if ev else None

        try:
            records = extract_parties(doc.plain_text, registry,
                                      threshold=config.party_similarity_threshold)
        except (ToolError, ValueError) as err:
            code = err.code if isinstance(err, ToolError) else "E_NO_REGISTRY"
            record_error(cid, "parties",
                         err if isinstance(err, ToolError) else ToolError(code, str(err)))
            records = []
        party_records[cid] = records
        pairs = sorted({(r.role, r.name) for r in records})
        row.parties = ";".join(f"{role}:{name}" for role, name in pairs)
        cache.parties_detail[cid] = [{"role": role, "name": name} for role, name in pairs]
        for rec in records:
            key = f"{rec.role}:{rec.name}"
            if key not in prov["parties"]:
                prov["parties"][key] = _ordinal_at(doc, rec.start)

        if bundle.effective is not None:
            try:
                life = compute_lifecycle(bundle, doc.sections, doc.plain_text)
            except ToolError as err:
                record_error(cid, "lifecycle", err)
                life = None
            if life is not None:
                if life.basis == "evergreen":
                    row.evergreen = "true"
                    prov["termination"] = _label_ordinal(doc, "termination")
                    if prov["termination"] is None:
                        prov["termination"] = 0
                else:
                    row.evergreen = "false"
                    row.termination_date = life.termination.render()
                    prov["termination"] = (_ordinal_at(doc, life.evidence.start)
                                           if life.evidence else None)
        else:
            prov["termination"] = None

        cache.rows[cid] = row
        cache.provenance[cid] = prov

    features = {
        cid: features_for(cid, bundles[cid], party_records[cid])
        for cid in bundles
        if bundles[cid].effective is not None
    }
    universe = list(features.values())
    for cid, feats in features.items():
        try:
            link = resolve_master(feats, universe)
        except ToolError as err:
            record_error(cid, "master", err)
            continue
        cache.rows[cid].is_master = "true" if link.kind == "master" else "false"
        cache.rows[cid].master_id = link.master_id or ""
    return cache
