"""Fuzzy party matching against a closed registry.

Matches are found by sliding word-boundary windows over the document, scoring
candidates with normalized Levenshtein similarity (1 - distance / max length)
and keeping non-overlapping hits at or above the threshold. Registry names are
searched longest first and their matched spans are masked before shorter names
run, so a name that is a substring of another is never reported at the longer
name's span. The registry is closed: nothing outside it can ever be emitted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

# Corporate suffixes dropped for comparison only; spans still cover the raw text.
_SUFFIXES = frozenset({"inc", "llc", "na", "n.a", "corp", "ltd", "lp", "co"})
_WORD_RE = re.compile(r"[A-Za-z0-9&.']+")

ROLES = ("fund", "trust", "custodian", "other")


@dataclass(frozen=True)
class RegistryEntry:
    name: str
    role: str


@dataclass
class PartyRecord:
    name: str  # canonical registry form
    role: str
    match_score: float
    start: int
    end: int
    matched_text: str


def normalize_name(name: str) -> str:
    """Lowercase, strip punctuation, collapse whitespace, drop common suffixes."""
    tokens = [t.lower().replace(".", "").replace("'", "") for t in _WORD_RE.findall(name)]
    tokens = [t for t in tokens if t]
    while tokens and tokens[-1] in _SUFFIXES:
        tokens.pop()
    return " ".join(tokens)


def levenshtein(a: str, b: str) -> int:
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def similarity(a: str, b: str) -> float:
    if not a and not b:
        return 1.0
    return 1.0 - levenshtein(a, b) / max(len(a), len(b))


def _doc_tokens(text: str) -> list[tuple[str, int, int]]:
    return [(m.group(0), m.start(), m.end()) for m in _WORD_RE.finditer(text)]


def extract_parties(
    text: str,
    registry: list[RegistryEntry],
    threshold: float = 0.90,
) -> list[PartyRecord]:
    """Find registry parties in ``text``; spans never overlap.

    Candidate windows are anchored at occurrences of the name's first
    normalized token (stylistic variants survive normalization, so the anchor
    holds for the punctuation/case noise this matcher exists to absorb).
    """
    if not registry:
        raise ValueError("registry must be non-empty")
    tokens = _doc_tokens(text)
    norm_tokens = [normalize_name(tok) for tok, _, _ in tokens]
    masked = [False] * len(tokens)
    records: list[PartyRecord] = []

    entries = sorted(registry, key=lambda e: (-len(normalize_name(e.name)), e.name))
    for entry in entries:
        target = normalize_name(entry.name)
        if not target:
            continue
        target_words = target.split()
        first = target_words[0]
        width_lo = max(1, len(target_words) - 2)
        width_hi = len(target_words) + 2
        candidates: list[tuple[float, int, int]] = []  # (score, tok_start, tok_end)
        for i, nt in enumerate(norm_tokens):
            if nt != first or masked[i]:
                continue
            for width in range(width_lo, width_hi + 1):
                j = i + width
                if j > len(tokens):
                    break
                if any(masked[k] for k in range(i, j)):
                    break
                candidate = " ".join(t for t in norm_tokens[i:j] if t)
                if not candidate:
                    continue
                if abs(len(candidate) - len(target)) > 0.2 * len(target):
                    continue
                score = similarity(candidate, target)
                if score >= threshold:
                    candidates.append((score, i, j))
        # Best score first; earlier span wins ties. Matched tokens are masked
        # so later (shorter) names cannot re-claim them.
        candidates.sort(key=lambda c: (-c[0], c[1], c[2]))
        for score, i, j in candidates:
            if any(masked[k] for k in range(i, j)):
                continue
            for k in range(i, j):
                masked[k] = True
            start, end = tokens[i][1], tokens[j - 1][2]
            records.append(
                PartyRecord(
                    name=entry.name,
                    role=entry.role,
                    match_score=round(score, 6),
                    start=start,
                    end=end,
                    matched_text=text[start:end],
                )
            )
    records.sort(key=lambda r: r.start)
    return records
