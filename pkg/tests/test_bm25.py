"""BM25 scoring against brute-force recomputation, plus persistence."""

import math

import pytest

from lawflow.config import DEFAULT_CONFIG
from lawflow.corpus.store import prepare_document
from lawflow.corpus.synth import generate_corpus
from lawflow.corpus.types import ContractDoc, SectionSpan
from lawflow.index.bm25 import (build_index, load_index, save_index,
                                search_sections, tokenize)
from lawflow.index.labels import KeywordLabeler, LabeledSection


def lab(cid, ordinal, heading, label, body):
    span = SectionSpan(contract_id=cid, ordinal=ordinal, heading_text=heading,
                       title_label=label, body_text=body,
                       start_offset=0, end_offset=len(body))
    return LabeledSection(span, 1.0)


TINY = [
    lab("c1", 0, "", "recitals", "the fund retains the custodian"),
    lab("c1", 1, "TERMINATION", "termination",
        "either party may terminate this agreement on notice"),
    lab("c1", 2, "FEES", "fees and expenses", "the fund shall pay fees monthly"),
    lab("c2", 0, "TERMINATION", "termination", "terminate terminate terminate"),
]


def brute_force_score(sections, sid, query, k1, b, title_weight):
    # independent recomputation straight from the section texts
    n = len(sections)
    bodies = [tokenize(s.span.body_text) for s in sections]
    titles = [tokenize(f"{s.span.title_label} {s.span.heading_text}")
              for s in sections]
    avgdl = sum(len(t) for t in bodies) / n
    norm = k1 * (1 - b + b * len(bodies[sid]) / avgdl)
    score = 0.0
    for term in tokenize(query):
        df = sum(1 for i in range(n) if term in bodies[i] or term in titles[i])
        idf = math.log(1 + (n - df + 0.5) / (df + 0.5))
        tf = bodies[sid].count(term) + title_weight * titles[sid].count(term)
        if tf:
            score += idf * tf * (k1 + 1) / (tf + norm)
    return score


def test_tokenize_drops_single_chars():
    assert tokenize("A fund's 2 terms; B-52") == ["fund", "terms", "52"]


def test_hand_counted_postings():
    index = build_index(TINY)
    assert index.n_sections == 4
    # "terminate": c1 section 1 body once, c2 section 0 body three times
    assert index.postings["terminate"] == [[1, 1, 0], [3, 3, 0]]
    # "termination" only via title fields
    assert index.postings["termination"] == [[1, 0, 2], [3, 0, 2]]
    assert index.by_contract == {"c1": [0, 1, 2], "c2": [3]}
    assert index.avgdl == pytest.approx((5 + 8 + 6 + 3) / 4)


def test_scores_match_brute_force_tiny():
    cfg = DEFAULT_CONFIG
    index = build_index(TINY)
    sid_of = {(e.contract_id, e.ordinal): i
              for i, e in enumerate(index.sections)}
    for cid in ("c1", "c2"):
        for query in ("terminate agreement", "fees", "termination notice"):
            for entry, score in search_sections(index, cid, query):
                want = brute_force_score(TINY, sid_of[(cid, entry.ordinal)],
                                         query, cfg.bm25_k1, cfg.bm25_b,
                                         cfg.title_term_weight)
                assert score == pytest.approx(want, abs=1e-9)


def test_title_term_boost_monotone():
    index = build_index(TINY)
    base = search_sections(index, "c1", "termination", title_weight=0.0)
    boosted = search_sections(index, "c1", "termination", title_weight=3.0)
    by_ord = lambda rs: {e.ordinal: s for e, s in rs}
    assert by_ord(boosted)[1] > by_ord(base)[1]


def test_unknown_contract_empty():
    assert search_sections(build_index(TINY), "nope", "termination") == []


def test_ranking_ties_break_by_ordinal():
    index = build_index(TINY)
    ranked = search_sections(index, "c1", "zzz unmatched terms")
    assert [e.ordinal for e, _ in ranked] == [0, 1, 2]
    assert all(s == 0.0 for _, s in ranked)


def corpus_sections(min_sections):
    sections = []
    labeler = KeywordLabeler()
    n_fams = 4
    while len(sections) < min_sections:
        docs, _ = generate_corpus(seed=71, n_families=n_fams)
        sections = []
        for raw in docs:
            doc = prepare_document(
                ContractDoc(**{**raw.__dict__, "sections": []}), labeler)
            sections.extend(LabeledSection(s, 1.0) for s in doc.sections)
        n_fams += 4
    return sections


def test_scores_match_brute_force_at_scale():
    cfg = DEFAULT_CONFIG
    sections = corpus_sections(600)
    index = build_index(sections)
    queries = ["termination", "fees and expenses", "governing law",
               "authorized persons", "indemnification claims losses"]
    cids = sorted(index.by_contract)[:6]
    for cid in cids:
        for query in queries:
            got = search_sections(index, cid, query, k=20)
            brute = [
                (sid, brute_force_score(sections, sid, query, cfg.bm25_k1,
                                        cfg.bm25_b, cfg.title_term_weight))
                for sid in index.by_contract[cid]
            ]
            brute.sort(key=lambda p: (-p[1], sections[p[0]].span.ordinal))
            brute = brute[:20]
            assert len(got) == len(brute)
            for (entry, score), (sid, want) in zip(got, brute):
                assert entry.ordinal == sections[sid].span.ordinal
                assert score == pytest.approx(want, abs=1e-9)


def test_persistence_round_trip(tmp_path):
    index = build_index(TINY)
    path = tmp_path / "idx.json"
    save_index(index, path)
    loaded = load_index(path)
    assert loaded.postings == index.postings
    assert loaded.avgdl == index.avgdl
    assert loaded.by_contract == index.by_contract
    a = search_sections(index, "c1", "terminate agreement")
    b = search_sections(loaded, "c1", "terminate agreement")
    assert [(e.ordinal, s) for e, s in a] == [(e.ordinal, s) for e, s in b]


def test_bad_magic_rejected(tmp_path):
    path = tmp_path / "idx.json"
    path.write_text('{"magic": "other", "version": 1}')
    with pytest.raises(ValueError):
        load_index(path)


def test_newer_version_rejected(tmp_path):
    index = build_index(TINY)
    path = tmp_path / "idx.json"
    save_index(index, path)
    import json
    payload = json.loads(path.read_text())
    payload["version"] = 99
    path.write_text(json.dumps(payload))
    with pytest.raises(ValueError):
        load_index(path)
