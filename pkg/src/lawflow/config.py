"""Runtime configuration with file override support.

All tunables the spec surfaces as configuration live here with their defaults;
``load_config`` overlays values from a YAML file. Nothing reads wall-clock or
environment state except the optional hosted-LLM adapter (see agents.client).
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path

import yaml


@dataclass
class Config:
    # extraction
    party_similarity_threshold: float = 0.90
    date_cue_window: int = 120
    # index
    label_score_threshold: float = 0.15
    title_term_weight: float = 2.0
    bm25_k1: float = 1.2
    bm25_b: float = 0.75
    search_top_k: int = 20
    # agents
    context_limit: int = 16_000
    chunk_size: int = 8_000
    subagent_parallelism: int = 8
    # plan
    max_repair_attempts: int = 3
    tool_call_budget: int = 1_000
    statement_cap: int = 200
    # planner/client selection: "mock" or "hosted"
    planner: str = "mock"
    llm_client: str = "mock"
    # fetcher
    fetch_rate_limit: float = 8.0
    fetch_max_retries: int = 4
    fetch_user_agent: str = "lawflow/0.1 (contact: ops@example.com)"
    # eval
    baseline_context_tokens: int = 3_000

    @classmethod
    def load(cls, path: str | Path | None = None) -> "Config":
        cfg = cls()
        if path is None:
            return cfg
        data = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        for key, value in data.items():
            setattr(cfg, key, value)
        return cfg


DEFAULT_CONFIG = Config()
