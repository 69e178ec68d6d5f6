from .client import HostedLlmClient, LlmClient, MockLlmClient, load_prompt, make_client
from .compare import ChainItem, ComparisonChain, Delta, compare_clauses
from .diff import SentenceDiff, clean_sentences, render_diff, sentence_diff
from .summarize import summarize
from .tokens import TokenBudget, chunk_text, count_tokens, split_paragraphs_exact, split_sentences_exact

__all__ = [
    "ChainItem",
    "ComparisonChain",
    "Delta",
    "HostedLlmClient",
    "LlmClient",
    "MockLlmClient",
    "SentenceDiff",
    "TokenBudget",
    "chunk_text",
    "clean_sentences",
    "compare_clauses",
    "count_tokens",
    "load_prompt",
    "make_client",
    "render_diff",
    "sentence_diff",
    "split_paragraphs_exact",
    "split_sentences_exact",
    "summarize",
]
