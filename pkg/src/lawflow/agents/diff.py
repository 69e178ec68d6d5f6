"""Sentence-level comparison shared by the comparison agent and the mock client.

Two texts are compared as sequences of normalized sentences. Sentences present
on only one side are reported in order; each orphaned left sentence is paired
with its most similar right counterpart (difflib ratio >= 0.6) and any numeric
or date literals that differ between the pair are called out explicitly.
"""

from __future__ import annotations

import difflib
import re
from dataclasses import dataclass, field

from .tokens import split_sentences_exact

_LITERAL_RE = re.compile(r"\$?\d[\d,./%-]*")


def clean_sentences(text: str) -> list[str]:
    out = []
    for piece in split_sentences_exact(text):
        s = " ".join(piece.split())
        if s:
            out.append(s)
    return out


def literals_of(sentence: str) -> list[str]:
    return [m.group(0).rstrip(".,;") for m in _LITERAL_RE.finditer(sentence)]


@dataclass
class SentenceDiff:
    only_left: list[str] = field(default_factory=list)
    only_right: list[str] = field(default_factory=list)
    changed_literals: list[tuple[str, str]] = field(default_factory=list)

    def is_empty(self) -> bool:
        return not (self.only_left or self.only_right or self.changed_literals)


def sentence_diff(left_text: str, right_text: str) -> SentenceDiff:
    left = clean_sentences(left_text)
    right = clean_sentences(right_text)
    right_set = set(right)
    left_set = set(left)
    diff = SentenceDiff(
        only_left=[s for s in left if s not in right_set],
        only_right=[s for s in right if s not in left_set],
    )
    unpaired_right = list(diff.only_right)
    for ls in diff.only_left:
        best, best_ratio = None, 0.0
        for rs in unpaired_right:
            ratio = difflib.SequenceMatcher(None, ls, rs).ratio()
            if ratio > best_ratio:
                best, best_ratio = rs, ratio
        if best is None or best_ratio < 0.6:
            continue
        unpaired_right.remove(best)
        lhs, rhs = literals_of(ls), literals_of(best)
        for a, b in zip(lhs, rhs):
            if a != b:
                diff.changed_literals.append((a, b))
        for extra in lhs[len(rhs):]:
            diff.changed_literals.append((extra, ""))
        for extra in rhs[len(lhs):]:
            diff.changed_literals.append(("", extra))
    return diff


def render_diff(diff: SentenceDiff) -> str:
    if diff.is_empty():
        return "No substantive change between the two sections."
    lines: list[str] = []
    if diff.changed_literals:
        changes = ", ".join(f"{a or '(absent)'} -> {b or '(absent)'}"
                            for a, b in diff.changed_literals)
        lines.append(f"Changed values: {changes}.")
    if diff.only_left:
        lines.append("Present only in the earlier section:")
        lines.extend(f"- {s}" for s in diff.only_left)
    if diff.only_right:
        lines.append("Present only in the later section:")
        lines.extend(f"- {s}" for s in diff.only_right)
    return "\n".join(lines)
