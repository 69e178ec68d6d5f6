"""Map-reduce summarization over the pluggable client.

Small inputs go to the client in one call. Anything over the context limit is
chunked, each chunk summarized by a sub-agent call (concurrently, bounded by
the configured parallelism), and the per-chunk outputs concatenated in chunk
order. Failures surface as E_LLM_FAILURE tagged with the chunk index.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

from ..config import DEFAULT_CONFIG
from ..errors import ToolError
from .client import LlmClient, load_prompt
from .tokens import TokenBudget, chunk_text

_PROMPT_NAME = "summarize_v1"


def _render(payload: str) -> str:
    return load_prompt(_PROMPT_NAME).format(payload=payload)


def _call(client: LlmClient, payload: str, max_output: int, chunk_idx: int) -> str:
    try:
        return client.generate(_render(payload), max_output)
    except ToolError:
        raise
    except Exception as e:
        raise ToolError("E_LLM_FAILURE", f"client {client.name} failed: {e}",
                        locus=f"chunk {chunk_idx}") from e


def summarize(
    section_texts: list[str],
    budget: TokenBudget | None = None,
    client: LlmClient | None = None,
    parallelism: int | None = None,
) -> str:
    """Summarize section texts, chunking when over the context limit."""
    budget = budget or TokenBudget()
    if client is None:
        raise ValueError("an LlmClient is required")
    text = "\n\n".join(t for t in section_texts if t)
    if not text:
        return ""

    prompt_overhead = budget.count(_render(""))
    if prompt_overhead + budget.count(text) <= budget.context_limit:
        return _call(client, text, budget.chunk_size, 0)

    chunks = chunk_text(text, budget)
    workers = parallelism or min(len(chunks), DEFAULT_CONFIG.subagent_parallelism)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_call, client, chunk, budget.chunk_size, i)
            for i, chunk in enumerate(chunks)
        ]
        parts = [f.result() for f in futures]  # join in chunk order
    return " ".join(p for p in parts if p)
