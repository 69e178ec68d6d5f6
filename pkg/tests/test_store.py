"""Corpus store persistence and parallel-equals-sequential ingestion."""

import pytest

from lawflow.corpus.store import CorpusStore, ingest_documents, prepare_document
from lawflow.corpus.synth import generate_corpus
from lawflow.corpus.types import ContractDoc
from lawflow.index.labels import KeywordLabeler


def make_doc(cid, text="<p>Section 1. Terms</p><p>Body text.</p>"):
    return ContractDoc(contract_id=cid, accession_no=f"acc-{cid}",
                       source_uri=f"test://{cid}", raw_markup=text,
                       plain_text="", filed_date="01/01/2010",
                       metadata_parties=["A Fund"])


def test_save_load_round_trip(tmp_path):
    store = CorpusStore(tmp_path)
    doc = prepare_document(make_doc("c1"))
    store.save_contract(doc)
    loaded = store.load_contract("c1")
    assert loaded.contract_id == "c1"
    assert loaded.raw_markup == doc.raw_markup
    assert loaded.plain_text == doc.plain_text
    assert [s.to_dict() for s in loaded.sections] == \
        [s.to_dict() for s in doc.sections]


def test_missing_contract_raises(tmp_path):
    store = CorpusStore(tmp_path)
    with pytest.raises(Exception):
        store.load_contract("ghost")


def test_contract_ids_sorted(tmp_path):
    store = CorpusStore(tmp_path)
    for cid in ("b2", "a1", "c3"):
        store.save_contract(prepare_document(make_doc(cid)))
    assert store.contract_ids() == ["a1", "b2", "c3"]


def test_no_partial_files_on_disk(tmp_path):
    store = CorpusStore(tmp_path)
    store.save_contract(prepare_document(make_doc("c1")))
    # writes go through temp + rename; no *.tmp residue
    leftovers = [p for p in tmp_path.rglob("*") if "tmp" in p.name]
    assert leftovers == []


def test_manifest_and_registry_round_trip(tmp_path):
    _, manifest = generate_corpus(seed=3, n_families=2)
    store = CorpusStore(tmp_path)
    assert not store.has_manifest()
    store.save_manifest(manifest)
    assert store.has_manifest()
    assert store.load_manifest().to_dict() == manifest.to_dict()
    entries = [{"name": "A Fund", "role": "fund"}]
    store.save_registry(entries)
    assert store.load_registry() == entries


def test_duplicate_ids_rejected():
    with pytest.raises(ValueError) as err:
        ingest_documents([make_doc("c1"), make_doc("c1")])
    assert "duplicate" in str(err.value)


def test_parallel_ingest_equals_sequential():
    docs_a, _ = generate_corpus(seed=19, n_families=3)
    docs_b, _ = generate_corpus(seed=19, n_families=3)
    labeler = KeywordLabeler()
    seq = ingest_documents(docs_a, labeler=labeler, workers=1)
    par = ingest_documents(docs_b, labeler=labeler, workers=6)
    assert [d.contract_id for d in seq] == [d.contract_id for d in par]
    for x, y in zip(seq, par):
        assert x.plain_text == y.plain_text
        assert [s.to_dict() for s in x.sections] == \
            [s.to_dict() for s in y.sections]


def test_ingest_output_sorted_by_id():
    docs, _ = generate_corpus(seed=19, n_families=3)
    docs.reverse()
    out = ingest_documents(docs, workers=2)
    ids = [d.contract_id for d in out]
    assert ids == sorted(ids)


def test_ingest_persists_when_store_given(tmp_path):
    store = CorpusStore(tmp_path)
    docs, _ = generate_corpus(seed=19, n_families=2)
    out = ingest_documents(docs, store=store, workers=2)
    assert store.contract_ids() == [d.contract_id for d in out]
    again = store.load_all()
    assert [d.contract_id for d in again] == [d.contract_id for d in out]
