"""Rate-limited fetcher with scripted transport and a fake clock."""

import json

import pytest

from lawflow.corpus.fetch import TokenBucket, contract_id_for, fetch_remote
from lawflow.corpus.store import CorpusStore
from lawflow.errors import ToolError


class FakeClock:
    def __init__(self):
        self.now = 0.0

    def __call__(self):
        return self.now

    def sleep(self, seconds):
        assert seconds >= 0
        self.now += seconds


def test_token_bucket_paces_to_rate():
    clock = FakeClock()
    bucket = TokenBucket(8.0, clock=clock, sleep=clock.sleep)
    for _ in range(80):
        bucket.acquire()
    # 80 requests at 8/s: first is free, remaining 79 need ~9.875s
    assert clock.now >= 9.8


def test_token_bucket_rejects_bad_rate():
    with pytest.raises(ValueError):
        TokenBucket(0)


def test_contract_id_for():
    assert contract_id_for("https://x.test/a/b/0001-02-0003.txt") == "0001-02-0003"
    assert contract_id_for("https://x.test/doc.htm?se=1") == "doc"
    assert contract_id_for("https://x.test/weird%20name/") == "weird-20name"


def ok_transport(uri, headers):
    assert headers["User-Agent"]
    return 200, f"<p>body of {uri}</p>"


def test_fetch_all_ok_paced():
    clock = FakeClock()
    uris = [f"https://x.test/doc{i}.htm" for i in range(80)]
    records = fetch_remote(uris, 8.0, transport=ok_transport,
                           clock=clock, sleep=clock.sleep)
    assert len(records) == 80
    assert clock.now >= 9.8
    assert all(r.attempts == 1 for r in records)


def test_rate_ceiling_enforced():
    with pytest.raises(ValueError):
        fetch_remote(["https://x.test/a"], 50.0, transport=ok_transport)


def test_empty_user_agent_rejected():
    with pytest.raises(ValueError):
        fetch_remote(["https://x.test/a"], 2.0, user_agent="  ",
                     transport=ok_transport)


def test_throttle_retry_then_success():
    clock = FakeClock()
    calls = []

    def transport(uri, headers):
        calls.append(uri)
        return (429, "") if len(calls) < 3 else (200, "fine")

    records = fetch_remote(["https://x.test/a"], 4.0, transport=transport,
                           clock=clock, sleep=clock.sleep, max_retries=4)
    assert len(calls) == 3
    assert records[0].attempts == 3
    assert records[0].content == "fine"


def test_throttle_exhaustion_raises():
    clock = FakeClock()
    attempts = []

    def transport(uri, headers):
        attempts.append(1)
        return 429, ""

    with pytest.raises(ToolError) as err:
        fetch_remote(["https://x.test/a"], 4.0, transport=transport,
                     clock=clock, sleep=clock.sleep, max_retries=2)
    assert err.value.code == "E_THROTTLED"
    assert len(attempts) == 3  # initial try + 2 retries


def test_hard_404_not_retried():
    calls = []

    def transport(uri, headers):
        calls.append(uri)
        return 404, ""

    clock = FakeClock()
    with pytest.raises(ToolError) as err:
        fetch_remote(["https://x.test/a"], 4.0, transport=transport,
                     clock=clock, sleep=clock.sleep, max_retries=3)
    assert err.value.code == "E_NETWORK"
    assert len(calls) == 1


def test_checkpoint_resume_skips_done(tmp_path):
    clock = FakeClock()
    ckpt = tmp_path / "ckpt.json"
    uris = ["https://x.test/a.htm", "https://x.test/b.htm"]
    fetched = []

    def transport(uri, headers):
        fetched.append(uri)
        return 200, "x"

    fetch_remote(uris, 4.0, transport=transport, checkpoint_path=ckpt,
                 clock=clock, sleep=clock.sleep)
    assert json.loads(ckpt.read_text()) == {u: "ok" for u in uris}

    fetched.clear()
    fetch_remote(uris + ["https://x.test/c.htm"], 4.0, transport=transport,
                 checkpoint_path=ckpt, clock=clock, sleep=clock.sleep)
    assert fetched == ["https://x.test/c.htm"]


def test_progress_persisted_before_failure(tmp_path):
    clock = FakeClock()
    ckpt = tmp_path / "ckpt.json"
    store = CorpusStore(tmp_path / "store")

    def transport(uri, headers):
        return (200, "<p>good</p>") if uri.endswith("a.htm") else (429, "")

    with pytest.raises(ToolError):
        fetch_remote(["https://x.test/a.htm", "https://x.test/b.htm"], 4.0,
                     transport=transport, store=store, checkpoint_path=ckpt,
                     clock=clock, sleep=clock.sleep, max_retries=1)
    done = json.loads(ckpt.read_text())
    assert done["https://x.test/a.htm"] == "ok"
    assert done["https://x.test/b.htm"] == "throttled"
    saved = store.load_contract("a")
    assert saved.plain_text == "good"
