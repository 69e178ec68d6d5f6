"""Heading-driven sectionization of contract plain text.

Three detectors run as a cascade over candidate lines, highest priority first:

1. numbered headings -- "Section 3.", "3.", "3.2", "ARTICLE III"
2. all-caps lines of at most 8 words
3. short title-case lines followed by a paragraph

Each detected heading starts a new span; the span runs to the start of the
next heading, so spans tile the whole text. Text before the first heading
becomes a recitals-candidate span at ordinal 0. A document with no headings
yields a single span covering everything. Detection is pure string work and
therefore deterministic.
"""

from __future__ import annotations

import re

from .types import ContractDoc, SectionSpan, UNKNOWN_LABEL

_NUMBERED_RE = re.compile(
    r"^(?:(?:Section|SECTION|Article|ARTICLE)\s+(?:\d+(?:\.\d+)*|[IVXLCDM]+)\.?|\d+(?:\.\d+)*\.)"
    r"(?:\s+\S|$)"
)
_SENTENCE_END = (".", ",", ";", ":")
# Lowercase connectives allowed inside a title-case heading.
_TITLE_STOPWORDS = frozenset({"and", "of", "or", "the", "to", "in", "on", "for", "a", "an"})

NUMBERED, ALLCAPS, TITLECASE = "numbered", "allcaps", "titlecase"


def _is_numbered(line: str) -> bool:
    return len(line) <= 100 and bool(_NUMBERED_RE.match(line))


def _is_allcaps(line: str) -> bool:
    words = line.split()
    if not words or len(words) > 8:
        return False
    letters = [c for c in line if c.isalpha()]
    return bool(letters) and all(c.isupper() for c in letters)


def _is_titlecase(line: str) -> bool:
    if line.endswith(_SENTENCE_END):
        return False
    words = line.split()
    if not words or len(words) > 8:
        return False
    significant = [w for w in words if w.lower() not in _TITLE_STOPWORDS]
    if not significant:
        return False
    return all(w[0].isupper() for w in significant if w[0].isalpha())


def classify_heading(line: str) -> str | None:
    """Return the detector name that claims this line, or None."""
    stripped = line.strip()
    if not stripped:
        return None
    if _is_numbered(stripped):
        return NUMBERED
    if _is_allcaps(stripped):
        return ALLCAPS
    if _is_titlecase(stripped):
        return TITLECASE
    return None


def _line_offsets(text: str) -> list[tuple[int, int]]:
    offsets = []
    pos = 0
    for line in text.split("\n"):
        offsets.append((pos, pos + len(line)))
        pos += len(line) + 1
    return offsets


def detect_headings(text: str) -> list[tuple[int, int, str, str]]:
    """Find heading lines as (start, end, heading_text, detector) tuples.

    Title-case candidates only count when followed by further paragraph text;
    a trailing short line (e.g. a closing name) is not a heading.
    """
    lines = text.split("\n")
    offsets = _line_offsets(text)
    headings = []
    for i, line in enumerate(lines):
        kind = classify_heading(line)
        if kind is None:
            continue
        if kind == TITLECASE:
            rest = "\n".join(lines[i + 1 :]).strip()
            if not rest:
                continue
        headings.append((offsets[i][0], offsets[i][1], line.strip(), kind))
    return headings


def sectionize(doc: ContractDoc) -> list[SectionSpan]:
    """Split a contract's plain text into ordered, non-overlapping spans."""
    text = doc.plain_text
    if not text:
        raise ValueError("plain_text must be populated before sectionize")
    headings = detect_headings(text)
    spans: list[SectionSpan] = []

    def add_span(start: int, end: int, heading_text: str, body_start: int):
        body = text[body_start:end].strip("\n").strip()
        spans.append(
            SectionSpan(
                contract_id=doc.contract_id,
                ordinal=len(spans),
                heading_text=heading_text,
                title_label=UNKNOWN_LABEL,
                body_text=body,
                start_offset=start,
                end_offset=end,
            )
        )

    if not headings:
        add_span(0, len(text), "", 0)
        return spans

    first_start = headings[0][0]
    if text[:first_start].strip():
        add_span(0, first_start, "", 0)

    for idx, (h_start, h_end, h_text, _kind) in enumerate(headings):
        span_end = headings[idx + 1][0] if idx + 1 < len(headings) else len(text)
        add_span(h_start, span_end, h_text, h_end)
    return spans
