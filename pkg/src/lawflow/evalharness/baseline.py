"""Simulated truncated-context baseline.

One pass over a context window holding the case's four correct and four
distractor contracts, cut to a fixed token budget. Answers are emitted only
where the surviving text carries evidence: no section search, no caching,
no repair loop. This is the thing the workflow engine exists to beat.
"""

from __future__ import annotations

import re

from ..agents.client import LlmClient
from ..agents.summarize import summarize
from ..agents.tokens import truncate_tokens
from ..config import DEFAULT_CONFIG, Config
from ..corpus.types import ContractDoc
from ..errors import ToolError
from ..extraction.dates import extract_dates
from ..extraction.parties import RegistryEntry, extract_parties
from ..multihop import _explicit_termination, calendar_add, parse_duration
from .dataset import EvalCase

_HEADER_RE = re.compile(r"^=== Contract (\S+) ===$", re.MULTILINE)
_EVERGREEN_CUE = re.compile(
    r"(?:remain|continue)s?\s+in\s+(?:full\s+force|effect)|unless\s+and\s+until\s+so\s+terminated",
    re.IGNORECASE)


def build_context(case: EvalCase, docs: dict[str, ContractDoc],
                  limit: int) -> dict[str, str]:
    """cid -> the slice of that contract surviving truncation (may be partial)."""
    candidates = sorted(set(case.correct_ids) | set(case.distractor_ids))
    parts = []
    for cid in candidates:
        doc = docs.get(cid)
        if doc is not None:
            parts.append(f"=== Contract {cid} ===\n{doc.plain_text}")
    window = truncate_tokens("\n\n".join(parts), limit)
    segments: dict[str, str] = {}
    matches = list(_HEADER_RE.finditer(window))
    for i, match in enumerate(matches):
        end = matches[i + 1].start() if i + 1 < len(matches) else len(window)
        body = window[match.end():end].strip()
        if body:
            segments[match.group(1)] = body
    return segments


def _dates_of(segments: dict[str, str]) -> dict[str, object]:
    bundles = {}
    for cid, seg in segments.items():
        try:
            bundles[cid] = extract_dates(seg)
        except ToolError:
            continue
    return bundles


def baseline_retrieve(case: EvalCase, docs: dict[str, ContractDoc],
                      entries: list[RegistryEntry],
                      config: Config = DEFAULT_CONFIG) -> list:
    segments = build_context(case, docs, config.baseline_context_tokens)
    task = case.query.task

    if task == "explore_all":
        wanted = [v.lower() for v in case.query.entities.values() if v]
        return [cid for cid, seg in sorted(segments.items())
                if all(w in seg.lower() for w in wanted)]

    if task == "find_parties":
        pairs = set()
        for seg in segments.values():
            for rec in extract_parties(seg, entries,
                                       threshold=config.party_similarity_threshold):
                pairs.add((rec.role, rec.name))
        return [list(p) for p in sorted(pairs)]

    bundles = _dates_of(segments)

    if task == "find_master_dates":
        return [[cid, b.master.render()] for cid, b in sorted(bundles.items())
                if b.master is not None]

    if task == "find_master_agreements":
        out = []
        for cid, b in sorted(bundles.items()):
            if b.effective is None or b.master is None:
                continue
            if b.effective == b.master:
                out.append([cid, cid])
                continue
            owners = [other for other, ob in bundles.items()
                      if other != cid and ob.effective == b.master]
            if len(owners) == 1:
                out.append([cid, owners[0]])
        return out

    if task == "find_termination_dates":
        out = []
        for cid, b in sorted(bundles.items()):
            if b.effective is None:
                continue
            seg = segments[cid]
            explicit = _explicit_termination(seg, b.effective)
            if explicit is not None:
                out.append([cid, explicit.render()])
                continue
            duration = parse_duration(seg)
            if duration is not None:
                count, unit = duration
                out.append([cid, calendar_add(b.effective, count, unit).render()])
                continue
            if _EVERGREEN_CUE.search(seg):
                out.append([cid, "evergreen"])
        return out

    raise ValueError(f"baseline has no retrieval rule for {task!r}")


def baseline_analytical(case: EvalCase, docs: dict[str, ContractDoc],
                        client: LlmClient,
                        config: Config = DEFAULT_CONFIG) -> str:
    segments = build_context(case, docs, config.baseline_context_tokens)
    if not segments:
        return ""
    window = "\n\n".join(seg for _, seg in sorted(segments.items()))
    return summarize([window], client=client)
