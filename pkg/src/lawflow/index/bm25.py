"""Embedded Okapi BM25 index over labeled contract sections.

Tokenization: lowercase, split on non-alphanumeric, drop single-character
tokens. Two fields per section: the body, and a title field made of the
assigned label plus the detected heading. Title term frequencies enter the
score with a fixed boost weight added to body tf before the saturation
formula, while document length counts body tokens only, so adding a query
term to a title can never lower the section's score.

Scoring: idf(t) = ln(1 + (N - n + 0.5)/(n + 0.5)) with n = sections where the
term appears in either field; per-section contribution uses k1 and b from
config. Queries are per-contract: results are filtered to one contract_id,
sorted by score descending with ties broken by ordinal.

Persistence is a JSON document with a magic/version header
(magic "lawflow-bm25", version 1); files with another magic or a newer
version are rejected.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from pathlib import Path

from ..config import DEFAULT_CONFIG
from .labels import LabeledSection

MAGIC = "lawflow-bm25"
VERSION = 1

_TOKEN_RE = re.compile(r"[a-z0-9]+")


def tokenize(text: str) -> list[str]:
    return [t for t in _TOKEN_RE.findall(text.lower()) if len(t) > 1]


@dataclass
class SectionEntry:
    contract_id: str
    ordinal: int
    heading_text: str
    title_label: str
    length: int  # body token count


@dataclass
class SearchIndex:
    sections: list[SectionEntry] = field(default_factory=list)
    # term -> list of [section idx, body tf, title tf], ascending by idx
    postings: dict[str, list[list[int]]] = field(default_factory=dict)
    by_contract: dict[str, list[int]] = field(default_factory=dict)
    avgdl: float = 0.0

    @property
    def n_sections(self) -> int:
        return len(self.sections)


def build_index(sections: list[LabeledSection]) -> SearchIndex:
    """Deterministic index build; input order defines section ids."""
    index = SearchIndex()
    total = 0
    for sid, labeled in enumerate(sections):
        span = labeled.span
        body_tokens = tokenize(span.body_text)
        title_tokens = tokenize(f"{span.title_label} {span.heading_text}")
        total += len(body_tokens)
        index.sections.append(SectionEntry(
            contract_id=span.contract_id,
            ordinal=span.ordinal,
            heading_text=span.heading_text,
            title_label=span.title_label,
            length=len(body_tokens),
        ))
        index.by_contract.setdefault(span.contract_id, []).append(sid)
        counts: dict[str, list[int]] = {}
        for t in body_tokens:
            counts.setdefault(t, [0, 0])[0] += 1
        for t in title_tokens:
            counts.setdefault(t, [0, 0])[1] += 1
        for term, (btf, ttf) in sorted(counts.items()):
            index.postings.setdefault(term, []).append([sid, btf, ttf])
    index.avgdl = total / len(sections) if sections else 0.0
    return index


def idf(index: SearchIndex, term: str) -> float:
    n = len(index.postings.get(term, ()))
    return math.log(1.0 + (index.n_sections - n + 0.5) / (n + 0.5))


def score_section(
    index: SearchIndex,
    sid: int,
    query_tokens: list[str],
    k1: float,
    b: float,
    title_weight: float,
) -> float:
    dl = index.sections[sid].length
    norm = k1 * (1.0 - b + b * (dl / index.avgdl if index.avgdl else 0.0))
    score = 0.0
    for term in query_tokens:
        postings = index.postings.get(term)
        if not postings:
            continue
        hit = next((p for p in postings if p[0] == sid), None)
        if hit is None:
            continue
        tf_eff = hit[1] + title_weight * hit[2]
        score += idf(index, term) * (tf_eff * (k1 + 1.0)) / (tf_eff + norm)
    return score


def search_sections(
    index: SearchIndex,
    contract_id: str,
    clause_query: str,
    k: int | None = None,
    *,
    k1: float | None = None,
    b: float | None = None,
    title_weight: float | None = None,
) -> list[tuple[SectionEntry, float]]:
    """Top-k sections of one contract for a clause query; unknown ids yield []."""
    k = DEFAULT_CONFIG.search_top_k if k is None else k
    k1 = DEFAULT_CONFIG.bm25_k1 if k1 is None else k1
    b = DEFAULT_CONFIG.bm25_b if b is None else b
    title_weight = DEFAULT_CONFIG.title_term_weight if title_weight is None else title_weight
    sids = index.by_contract.get(contract_id, [])
    if not sids:
        return []
    query_tokens = tokenize(clause_query)
    scored = [
        (index.sections[sid], score_section(index, sid, query_tokens, k1, b, title_weight))
        for sid in sids
    ]
    scored.sort(key=lambda pair: (-pair[1], pair[0].ordinal))
    return scored[:k]


def save_index(index: SearchIndex, path: str | Path) -> None:
    payload = {
        "magic": MAGIC,
        "version": VERSION,
        "avgdl": index.avgdl,
        "sections": [
            [s.contract_id, s.ordinal, s.heading_text, s.title_label, s.length]
            for s in index.sections
        ],
        "postings": index.postings,
    }
    Path(path).write_text(
        json.dumps(payload, sort_keys=True, ensure_ascii=False), encoding="utf-8"
    )


def load_index(path: str | Path) -> SearchIndex:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    if payload.get("magic") != MAGIC:
        raise ValueError(f"not a {MAGIC} file: {path}")
    if payload.get("version", 0) > VERSION:
        raise ValueError(f"index version {payload['version']} is newer than supported {VERSION}")
    index = SearchIndex(avgdl=payload["avgdl"], postings=payload["postings"])
    for sid, (cid, ordinal, heading, label, length) in enumerate(payload["sections"]):
        index.sections.append(SectionEntry(cid, ordinal, heading, label, length))
        index.by_contract.setdefault(cid, []).append(sid)
    return index
