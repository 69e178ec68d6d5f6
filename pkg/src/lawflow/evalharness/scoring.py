"""Scoring: micro-averaged recall for retrieval, token F1 for analytical."""

from __future__ import annotations

import re
from collections import Counter
from typing import Protocol

_TOKEN_RE = re.compile(r"[a-z0-9]+")


def _tokens(text: str) -> Counter:
    return Counter(_TOKEN_RE.findall(text.lower()))


def token_f1(candidate: str, reference: str) -> float:
    """Bag-of-tokens F1; two empty texts count as a perfect match."""
    a, b = _tokens(candidate), _tokens(reference)
    if not a and not b:
        return 1.0
    if not a or not b:
        return 0.0
    overlap = sum((a & b).values())
    if overlap == 0:
        return 0.0
    precision = overlap / sum(a.values())
    recall = overlap / sum(b.values())
    return 2 * precision * recall / (precision + recall)


class SimilarityScorer(Protocol):
    def score(self, candidate: str, reference: str) -> float: ...


class TokenF1Scorer:
    name = "token-f1"

    def score(self, candidate: str, reference: str) -> float:
        return token_f1(candidate, reference)


def as_hit_item(value):
    """Canonical hashable form for truth/retrieved items."""
    if isinstance(value, (list, tuple)):
        return tuple(as_hit_item(v) for v in value)
    return value


def recall_counts(retrieved: list, truth: list) -> tuple[int, int]:
    """(hits, truth size) for one case; micro-aggregation sums these."""
    want = {as_hit_item(v) for v in truth}
    got = {as_hit_item(v) for v in retrieved}
    return len(want & got), len(want)
