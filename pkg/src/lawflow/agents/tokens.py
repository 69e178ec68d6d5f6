"""Token counting and reconstruction-exact chunking.

The default tokenizer counts maximal alphanumeric runs plus standalone
non-space symbols; whitespace is free. Chunking splits at paragraph
boundaries, falls back to sentence boundaries for an oversized paragraph,
and hard-splits a single oversized sentence at a token edge. Every piece
keeps its trailing separator, so the concatenation of chunks reproduces the
input byte for byte.

Token counts are subadditive under concatenation (joining two pieces can
only merge runs at the seam), so packing by summed piece counts never
produces a chunk over the budget.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable

from ..config import DEFAULT_CONFIG

_TOKEN_RE = re.compile(r"[A-Za-z0-9]+|[^A-Za-z0-9\s]")


def count_tokens(text: str) -> int:
    return len(_TOKEN_RE.findall(text))


def truncate_tokens(text: str, limit: int) -> str:
    """Prefix of text holding at most ``limit`` tokens (same tokenizer)."""
    if limit <= 0:
        return ""
    for i, match in enumerate(_TOKEN_RE.finditer(text)):
        if i == limit:
            return text[: match.start()].rstrip()
    return text


@dataclass
class TokenBudget:
    context_limit: int = DEFAULT_CONFIG.context_limit
    chunk_size: int = DEFAULT_CONFIG.chunk_size
    tokenizer: Callable[[str], int] = field(default=count_tokens)

    def __post_init__(self):
        if self.chunk_size >= self.context_limit:
            raise ValueError("chunk_size must be smaller than context_limit")

    def count(self, text: str) -> int:
        return self.tokenizer(text)


def split_paragraphs_exact(text: str) -> list[str]:
    """Paragraph pieces, each keeping its trailing blank-line separator."""
    pieces = re.split(r"(\n{2,})", text)
    out: list[str] = []
    for i in range(0, len(pieces), 2):
        chunk = pieces[i] + (pieces[i + 1] if i + 1 < len(pieces) else "")
        if chunk:
            out.append(chunk)
    return out


def split_sentences_exact(text: str) -> list[str]:
    """Sentence pieces keeping delimiters and whitespace; join == input."""
    pieces = re.split(r"(?<=[.!?;])(\s+)", text)
    out: list[str] = []
    for i in range(0, len(pieces), 2):
        chunk = pieces[i] + (pieces[i + 1] if i + 1 < len(pieces) else "")
        if chunk:
            out.append(chunk)
    return out


def _hard_split(piece: str, limit: int, counter: Callable[[str], int]) -> list[str]:
    """Cut an oversized piece at token edges so every slice fits the limit."""
    out = []
    rest = piece
    while counter(rest) > limit:
        spans = list(_TOKEN_RE.finditer(rest))
        cut = spans[limit - 1].end() if limit <= len(spans) else len(rest)
        out.append(rest[:cut])
        rest = rest[cut:]
    if rest:
        out.append(rest)
    return out


def chunk_text(text: str, budget: TokenBudget | None = None) -> list[str]:
    """Split text into chunks of at most chunk_size tokens; join(chunks) == text."""
    budget = budget or TokenBudget()
    limit = budget.chunk_size
    if not text:
        return []

    pieces: list[str] = []
    for para in split_paragraphs_exact(text):
        if budget.count(para) <= limit:
            pieces.append(para)
            continue
        for sent in split_sentences_exact(para):
            if budget.count(sent) <= limit:
                pieces.append(sent)
            else:
                pieces.extend(_hard_split(sent, limit, budget.count))

    chunks: list[str] = []
    current: list[str] = []
    current_tokens = 0
    for piece in pieces:
        n = budget.count(piece)
        if current and current_tokens + n > limit:
            chunks.append("".join(current))
            current, current_tokens = [], 0
        current.append(piece)
        current_tokens += n
    if current:
        chunks.append("".join(current))
    return chunks
