"""LLM client interface, the deterministic extractive mock, and a hosted adapter.

The mock recognizes the package's own prompt shapes: a TEXT block means
extractive summarization, LEFT/RIGHT blocks mean sentence-level comparison.
Extraction keeps the first sentence of every paragraph plus any sentence
carrying a date literal, a duration phrase, or a known party name, in input
order, so identical prompts always produce identical output. The mock is
stateless after construction and safe for concurrent calls.

The hosted adapter is configuration-only plumbing: endpoint, credential, and
model name come from environment variables and requests go over HTTP with the
prompt as-is. It exists so a real model can be swapped in; nothing in the
test suite touches it.
"""

from __future__ import annotations

import json
import os
import re
import urllib.request
from pathlib import Path
from typing import Protocol

from ..errors import ToolError
from ..extraction.dates import find_date_literals
from ..multihop import parse_duration
from .diff import clean_sentences, render_diff, sentence_diff
from .tokens import count_tokens, split_paragraphs_exact

_PROMPT_DIR = Path(__file__).parent / "prompts"

_TEXT_BLOCK = re.compile(r"<<<TEXT\n(.*?)\nTEXT>>>", re.DOTALL)
_LEFT_BLOCK = re.compile(r"<<<LEFT\n(.*?)\nLEFT>>>", re.DOTALL)
_RIGHT_BLOCK = re.compile(r"<<<RIGHT\n(.*?)\nRIGHT>>>", re.DOTALL)


def load_prompt(name: str) -> str:
    return (_PROMPT_DIR / f"{name}.txt").read_text(encoding="utf-8")


class LlmClient(Protocol):
    name: str

    def generate(self, prompt: str, max_output: int) -> str: ...


class MockLlmClient:
    """Deterministic extractive stand-in for a hosted model."""

    def __init__(self, party_names: list[str] | None = None):
        self.name = "mock-extractive"
        self._parties = [p.lower() for p in (party_names or []) if p.strip()]

    def generate(self, prompt: str, max_output: int) -> str:
        left = _LEFT_BLOCK.search(prompt)
        right = _RIGHT_BLOCK.search(prompt)
        if left and right:
            out = render_diff(sentence_diff(left.group(1), right.group(1)))
        else:
            text = _TEXT_BLOCK.search(prompt)
            out = self._extract(text.group(1) if text else prompt)
        return self._truncate(out, max_output)

    def _keep(self, sentence: str) -> bool:
        if find_date_literals(sentence):
            return True
        if parse_duration(sentence) is not None:
            return True
        low = sentence.lower()
        return any(p in low for p in self._parties)

    def _extract(self, text: str) -> str:
        kept: list[str] = []
        for para in split_paragraphs_exact(text):
            sentences = clean_sentences(para)
            for i, s in enumerate(sentences):
                if i == 0 or self._keep(s):
                    kept.append(s)
        return " ".join(kept)

    @staticmethod
    def _truncate(text: str, max_output: int) -> str:
        if count_tokens(text) <= max_output:
            return text
        out: list[str] = []
        used = 0
        for s in clean_sentences(text):
            n = count_tokens(s)
            if out and used + n > max_output:
                break
            out.append(s)
            used += n
        return " ".join(out)


class HostedLlmClient:
    """Adapter for an HTTP text-generation endpoint; env-var configured."""

    ENDPOINT_VAR = "LAWFLOW_LLM_ENDPOINT"
    KEY_VAR = "LAWFLOW_LLM_API_KEY"
    MODEL_VAR = "LAWFLOW_LLM_MODEL"

    def __init__(self):
        self.endpoint = os.environ.get(self.ENDPOINT_VAR, "")
        self.api_key = os.environ.get(self.KEY_VAR, "")
        self.model = os.environ.get(self.MODEL_VAR, "")
        if not (self.endpoint and self.api_key and self.model):
            raise ToolError(
                "E_LLM_FAILURE",
                f"hosted client needs {self.ENDPOINT_VAR}, {self.KEY_VAR}, {self.MODEL_VAR}",
            )
        self.name = f"hosted:{self.model}"

    def generate(self, prompt: str, max_output: int) -> str:
        body = json.dumps({
            "model": self.model,
            "prompt": prompt,
            "max_tokens": max_output,
        }).encode("utf-8")
        req = urllib.request.Request(
            self.endpoint,
            data=body,
            headers={
                "Content-Type": "application/json",
                "Authorization": f"Bearer {self.api_key}",
            },
        )
        try:
            with urllib.request.urlopen(req, timeout=120) as resp:
                payload = json.loads(resp.read().decode("utf-8"))
        except OSError as e:
            raise ToolError("E_LLM_FAILURE", f"hosted call failed: {e}") from e
        try:
            return payload["choices"][0]["text"]
        except (KeyError, IndexError, TypeError) as e:
            raise ToolError("E_LLM_FAILURE", "unexpected hosted response shape") from e


def make_client(kind: str, party_names: list[str] | None = None) -> LlmClient:
    if kind == "mock":
        return MockLlmClient(party_names)
    if kind == "hosted":
        return HostedLlmClient()
    raise ValueError(f"unknown llm client kind: {kind!r}")
