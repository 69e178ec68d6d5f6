"""Chronological pairwise comparison of sections across contract versions.

Sections are sorted by their contract's effective date (ties by contract id,
then ordinal) and each adjacent pair produces one delta. The structured part
of a delta (sentences unique to either side, changed literals) is computed
locally by the sentence differ; the narrative text comes from the client, so
a hosted model can phrase it while the mock keeps everything deterministic.
A side larger than the chunk budget is summarized down before comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..extraction.dates import CalendarDate
from .client import LlmClient, load_prompt
from .diff import SentenceDiff, sentence_diff
from .summarize import summarize
from .tokens import TokenBudget

_PROMPT_NAME = "compare_v1"


@dataclass
class ChainItem:
    contract_id: str
    effective: CalendarDate
    text: str
    ordinal: int = 0


@dataclass
class Delta:
    left_id: str
    right_id: str
    diff: SentenceDiff
    narrative: str


@dataclass
class ComparisonChain:
    items: list[ChainItem] = field(default_factory=list)
    deltas: list[Delta] = field(default_factory=list)


def _shrink(text: str, budget: TokenBudget, client: LlmClient) -> str:
    # Repeated summarization, as many passes as it takes (bounded), to bring
    # an oversized side under the chunk budget before pairwise comparison.
    for _ in range(3):
        if budget.count(text) <= budget.chunk_size:
            return text
        text = summarize([text], budget, client)
    return text


def compare_clauses(
    sections: list[ChainItem],
    budget: TokenBudget | None = None,
    client: LlmClient | None = None,
) -> ComparisonChain:
    """Compare sections pairwise in chronological order; n sections, n-1 deltas."""
    if not sections:
        raise ValueError("at least one section is required")
    if client is None:
        raise ValueError("an LlmClient is required")
    budget = budget or TokenBudget()

    ordered = sorted(sections, key=lambda s: (s.effective, s.contract_id, s.ordinal))
    chain = ComparisonChain(items=ordered)
    texts = [_shrink(item.text, budget, client) for item in ordered]
    template = load_prompt(_PROMPT_NAME)
    for left, right, left_text, right_text in zip(ordered, ordered[1:], texts, texts[1:]):
        prompt = template.format(left=left_text, right=right_text)
        narrative = client.generate(prompt, budget.chunk_size)
        chain.deltas.append(Delta(
            left_id=left.contract_id,
            right_id=right.contract_id,
            diff=sentence_diff(left_text, right_text),
            narrative=narrative,
        ))
    return chain
