"""Rate-limited remote fetcher: token-bucket pacing, backoff, checkpointing.

The transport is injectable (any callable ``(uri, headers) -> (status, body)``)
so tests run against scripted fixtures instead of the network; the default
transport speaks HTTP via urllib. Clock and sleep are injectable for the same
reason. Successful documents are persisted to the corpus store as they land,
and a checkpoint file records progress so an interrupted run resumes without
re-fetching.
"""

from __future__ import annotations

import json
import logging
import re
import time
import urllib.error
import urllib.request
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from ..config import DEFAULT_CONFIG
from ..errors import ToolError
from .markup import normalize_markup
from .store import CorpusStore, _write_json
from .types import ContractDoc

log = logging.getLogger("lawflow.fetch")

MAX_RATE = 10.0  # requests/second ceiling the upstream source allows
_THROTTLE_STATUSES = {429, 503}

Transport = Callable[[str, dict], tuple[int, str]]


class TokenBucket:
    """Classic token bucket; acquire() blocks (via the injected sleep) for one token."""

    def __init__(self, rate: float, capacity: float = 1.0,
                 clock: Callable[[], float] = time.monotonic,
                 sleep: Callable[[float], None] = time.sleep):
        if rate <= 0:
            raise ValueError("rate must be positive")
        self.rate = rate
        self.capacity = max(capacity, 1.0)
        self._clock = clock
        self._sleep = sleep
        self._tokens = self.capacity
        self._last = clock()

    def acquire(self) -> None:
        while True:
            now = self._clock()
            self._tokens = min(self.capacity, self._tokens + (now - self._last) * self.rate)
            self._last = now
            if self._tokens >= 1.0:
                self._tokens -= 1.0
                return
            self._sleep((1.0 - self._tokens) / self.rate)


@dataclass
class FetchRecord:
    uri: str
    contract_id: str
    content: str
    attempts: int


def _default_transport(uri: str, headers: dict) -> tuple[int, str]:
    req = urllib.request.Request(uri, headers=headers)
    try:
        with urllib.request.urlopen(req, timeout=30) as resp:
            return resp.status, resp.read().decode("utf-8", errors="replace")
    except urllib.error.HTTPError as e:
        return e.code, ""


def contract_id_for(uri: str) -> str:
    """Stable filesystem-safe id from a URI's last path segment."""
    tail = uri.rstrip("/").rsplit("/", 1)[-1]
    tail = tail.split("?", 1)[0]
    tail = re.sub(r"\.[A-Za-z0-9]+$", "", tail)
    safe = re.sub(r"[^A-Za-z0-9_-]", "-", tail).strip("-")
    return safe or "doc"


def _load_checkpoint(path: Path | None) -> dict:
    if path is None or not path.is_file():
        return {}
    return json.loads(path.read_text(encoding="utf-8"))


def fetch_remote(
    uri_list: list[str],
    rate_limit: float | None = None,
    *,
    user_agent: str | None = None,
    store: CorpusStore | None = None,
    checkpoint_path: str | Path | None = None,
    max_retries: int | None = None,
    backoff_base: float = 0.5,
    transport: Transport | None = None,
    clock: Callable[[], float] = time.monotonic,
    sleep: Callable[[float], None] = time.sleep,
) -> list[FetchRecord]:
    """Fetch documents with pacing and retries; persist and checkpoint progress.

    Raises ToolError(E_THROTTLED) when any URI exhausts its retries on
    throttling responses, ToolError(E_NETWORK) for other unrecoverable
    failures. Work completed before the error is already persisted and
    recorded in the checkpoint, so the same call is resumable.
    """
    rate = DEFAULT_CONFIG.fetch_rate_limit if rate_limit is None else rate_limit
    if not 0 < rate <= MAX_RATE:
        raise ValueError(f"rate_limit must be in (0, {MAX_RATE}]: {rate}")
    agent = DEFAULT_CONFIG.fetch_user_agent if user_agent is None else user_agent
    if not agent.strip():
        raise ValueError("a client-identification header is required")
    retries = DEFAULT_CONFIG.fetch_max_retries if max_retries is None else max_retries
    send = transport or _default_transport
    headers = {"User-Agent": agent}
    checkpoint = Path(checkpoint_path) if checkpoint_path else None
    done = _load_checkpoint(checkpoint)

    if not uri_list:
        return []

    bucket = TokenBucket(rate, clock=clock, sleep=sleep)
    results: list[FetchRecord] = []
    throttled: list[str] = []
    failed: list[str] = []

    for uri in uri_list:
        if done.get(uri) == "ok":
            log.info("skip (checkpointed): %s", uri)
            continue
        attempts = 0
        saw_throttle = False
        record = None
        while attempts < 1 + retries:
            attempts += 1
            bucket.acquire()
            try:
                status, body = send(uri, headers)
            except OSError as e:
                log.warning("attempt %d for %s: network error %s", attempts, uri, e)
                status, body = None, ""
            else:
                log.info("attempt %d for %s: status %s", attempts, uri, status)
            if status == 200:
                record = FetchRecord(uri=uri, contract_id=contract_id_for(uri),
                                     content=body, attempts=attempts)
                break
            if status in _THROTTLE_STATUSES:
                saw_throttle = True
            elif status is not None:
                break  # hard HTTP error: retrying a 404 won't help
            if attempts < 1 + retries:
                sleep(backoff_base * (2 ** (attempts - 1)))

        if record is None:
            (throttled if saw_throttle else failed).append(uri)
            done[uri] = "throttled" if saw_throttle else "failed"
        else:
            results.append(record)
            done[uri] = "ok"
            if store is not None:
                doc = ContractDoc(
                    contract_id=record.contract_id,
                    accession_no="",
                    source_uri=uri,
                    raw_markup=record.content,
                    plain_text=normalize_markup(record.content),
                    filed_date="",
                )
                store.save_contract(doc)
        if checkpoint is not None:
            _write_json(checkpoint, done)

    if throttled:
        raise ToolError("E_THROTTLED", f"retries exhausted for {len(throttled)} uri(s)",
                        locus=", ".join(throttled[:5]))
    if failed:
        raise ToolError("E_NETWORK", f"unrecoverable failures for {len(failed)} uri(s)",
                        locus=", ".join(failed[:5]))
    return results
