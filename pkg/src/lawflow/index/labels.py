"""Section labeling: heading match first, keyword-lexicon scoring second.

The cascade: (1) the heading text, normalized and stripped of numbering, is
matched exactly against the 20 clause labels and a curated alias table; (2)
otherwise each label's lexicon (a plain-text term-weight list under
``lexicons/``) scores the body as weighted keyword hits per body token, and
the argmax wins if it reaches the threshold, ties going to the lower
alphabetical label. Anything below threshold is "unknown".

The KeywordLabeler class is the deterministic implementation of the
SectionLabeler interface; a learned classifier can replace it without
touching callers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

from ..config import DEFAULT_CONFIG
from ..corpus.types import CLAUSE_LABELS, UNKNOWN_LABEL, SectionSpan

_LEXICON_DIR = Path(__file__).parent / "lexicons"

# Heading variants that do not equal a label verbatim but are unambiguous.
HEADING_ALIASES: dict[str, str] = {
    "fees": "fees and expenses",
    "expenses": "fees and expenses",
    "charges and disbursements": "fees and expenses",
    "compensation": "fee schedule",
    "compensation of the custodian": "fee schedule",
    "governing law jurisdiction": "governing law",
    "applicable law": "governing law",
    "limitation of liability": "limitations and scope of use or liability",
    "limitations of liability": "limitations and scope of use or liability",
    "standard of care": "standard of care liabilities",
    "proper instructions": "instructions",
    "subcustodians": "subcustodians and securities depositories",
    "securities depositories": "subcustodians and securities depositories",
    "foreign subcustodians": "foreign custodian and subcustodian",
    "foreign custodians": "foreign custodian and subcustodian",
    "duties of the custodian": "duties and responsibilities",
    "appointment of successor custodian": "successor custodian",
    "confidentiality": "proprietary information",
    "termination of agreement": "termination",
    "term and termination": "termination",
    "witnesseth": "recitals",
    "custody agreement": "recitals",
    "amendment to custody agreement": "recitals",
    "amendment no to custody agreement": "recitals",
}

_ROMAN_RE = re.compile(r"^[ivxlcdm]+$")


def normalize_heading(text: str) -> str:
    """Lowercase, drop digit tokens and Section/Article numbering prefixes."""
    tokens = [t for t in re.findall(r"[a-z0-9]+", text.lower()) if not t.isdigit()]
    while tokens and tokens[0] in ("section", "article"):
        tokens = tokens[1:]
        if tokens and _ROMAN_RE.match(tokens[0]):
            tokens = tokens[1:]
    return " ".join(tokens)


def tokenize_body(text: str) -> list[str]:
    return re.findall(r"[a-z0-9]+", text.lower())


def canonical_label(text: str) -> str | None:
    """Map free text to a clause label when it names one, else None."""
    norm = normalize_heading(text)
    if norm in CLAUSE_LABELS:
        return norm
    return HEADING_ALIASES.get(norm)


def load_lexicons(directory: Path | None = None) -> dict[str, dict[str, float]]:
    """Read one term-weight file per label; file name is the label with underscores."""
    directory = directory or _LEXICON_DIR
    lexicons: dict[str, dict[str, float]] = {}
    for label in CLAUSE_LABELS:
        path = directory / (label.replace(" ", "_") + ".txt")
        terms: dict[str, float] = {}
        for line in path.read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            term, weight = line.rsplit(None, 1)
            terms[term] = float(weight)
        lexicons[label] = terms
    return lexicons


@dataclass
class LabeledSection:
    span: SectionSpan
    label_score: float

    @property
    def title_label(self) -> str:
        return self.span.title_label


class SectionLabeler(Protocol):
    def label_section(self, section: SectionSpan) -> LabeledSection: ...


class KeywordLabeler:
    """Deterministic heading/lexicon cascade over the 20 clause labels."""

    def __init__(self, threshold: float | None = None,
                 lexicon_dir: Path | None = None):
        self.threshold = (DEFAULT_CONFIG.label_score_threshold
                          if threshold is None else threshold)
        self.lexicons = load_lexicons(lexicon_dir)
        self._labels_by_norm = {lbl: lbl for lbl in CLAUSE_LABELS}

    def label_section(self, section: SectionSpan) -> LabeledSection:
        if not section.body_text:
            raise ValueError("body_text must be non-empty")
        heading = normalize_heading(section.heading_text)
        if heading in self._labels_by_norm:
            return self._labeled(section, heading, 1.0)
        if heading in HEADING_ALIASES:
            return self._labeled(section, HEADING_ALIASES[heading], 1.0)

        label, score = self.score_body(section.body_text)
        if score >= self.threshold:
            return self._labeled(section, label, min(score, 1.0))
        return self._labeled(section, UNKNOWN_LABEL, 0.0)

    def score_body(self, body_text: str) -> tuple[str, float]:
        """Best (label, weighted keyword hit rate) for a body; ties alphabetical."""
        tokens = tokenize_body(body_text)
        if not tokens:
            return UNKNOWN_LABEL, 0.0
        best_label, best_score = UNKNOWN_LABEL, -1.0
        for label in CLAUSE_LABELS:  # alphabetical, so first win breaks ties low
            lex = self.lexicons[label]
            hit_weight = sum(lex.get(t, 0.0) for t in tokens)
            score = hit_weight / len(tokens)
            if score > best_score:
                best_label, best_score = label, score
        return best_label, best_score

    # Convenience for ingest pipelines that only want the label string.
    def label(self, section: SectionSpan) -> str:
        return self.label_section(section).span.title_label

    @staticmethod
    def _labeled(section: SectionSpan, label: str, score: float) -> LabeledSection:
        section.title_label = label
        return LabeledSection(span=section, label_score=score)
