"""Feature cache: warm determinism, CSV round-trips, degraded rows, sidecars."""

import pytest

from lawflow.corpus.store import prepare_document
from lawflow.corpus.types import ContractDoc
from lawflow.errors import ToolError
from lawflow.extraction.parties import RegistryEntry
from lawflow.index.labels import KeywordLabeler
from lawflow.orchestrator.cache import COLUMNS, CacheRow, FeatureCache, warm_cache


def make_doc(cid, body):
    raw = "".join(f"<p>{para}</p>" for para in body)
    return prepare_document(ContractDoc(
        contract_id=cid, accession_no=f"acc-{cid}", source_uri=f"test://{cid}",
        raw_markup=raw, plain_text="", filed_date="01/01/2010"),
        labeler=KeywordLabeler())


REG = [RegistryEntry("Harborview Balanced Fund", "fund"),
       RegistryEntry("Meridian Bank, N.A.", "custodian")]

FULL_DOC_BODY = [
    "CUSTODY AGREEMENT",
    "This Custody Agreement is effective as of 13/06/2005 and is by and "
    "between Harborview Balanced Fund and Meridian Bank, N.A.",
    "Section 8. Termination.",
    "This Agreement shall terminate on 13/06/2008 unless renewed.",
]


def test_csv_round_trip_bit_exact(snapshot7):
    text = snapshot7.cache.to_csv_text()
    again = FeatureCache.from_csv_text(text).to_csv_text()
    assert again == text
    assert text.startswith(",".join(COLUMNS) + "\n")
    assert "\r" not in text
    assert text.endswith("\n")


def test_rewarm_byte_identical(snapshot7):
    docs = sorted(snapshot7.docs.values(), key=lambda d: d.contract_id)
    first = warm_cache(docs, snapshot7.registry_entries)
    second = warm_cache(docs, snapshot7.registry_entries)
    assert first.to_csv_text() == second.to_csv_text()
    assert first.provenance == second.provenance
    assert first.errors == second.errors
    # and the warm matches what the snapshot shipped with
    assert first.to_csv_text() == snapshot7.cache.to_csv_text()


def test_save_load_round_trip(tmp_path, snapshot7):
    cache = snapshot7.cache
    cache.save(tmp_path)
    loaded = FeatureCache.load(tmp_path)
    assert loaded.to_csv_text() == cache.to_csv_text()
    assert loaded.errors == cache.errors
    assert loaded.parties_detail == cache.parties_detail
    assert loaded.provenance == cache.provenance
    leftovers = [p for p in tmp_path.iterdir() if p.name.endswith(".tmp")]
    assert leftovers == []


def test_load_missing_cache(tmp_path):
    with pytest.raises(ToolError) as exc:
        FeatureCache.load(tmp_path)
    assert exc.value.code == "E_CACHE_FORMAT"


def test_bad_header_rejected():
    with pytest.raises(ToolError) as exc:
        FeatureCache.from_csv_text("a,b,c\n1,2,3\n")
    assert exc.value.code == "E_CACHE_FORMAT"


def test_bad_row_width_rejected():
    text = ",".join(COLUMNS) + "\nonly,three,cells\n"
    with pytest.raises(ToolError) as exc:
        FeatureCache.from_csv_text(text)
    assert exc.value.code == "E_CACHE_FORMAT"


def test_party_pairs_parse():
    row = CacheRow(contract_id="c1",
                   parties="custodian:Meridian Bank, N.A.;fund:A Fund")
    assert row.party_pairs() == [("custodian", "Meridian Bank, N.A."),
                                 ("fund", "A Fund")]
    assert CacheRow(contract_id="c2").party_pairs() == []


def test_degraded_row_no_dates():
    doc = make_doc("c-dull", ["AGREEMENT", "No calendar facts in here at all."])
    cache = warm_cache([doc], REG)
    row = cache.row("c-dull")
    assert row is not None
    assert row.effective_date == "" and row.termination_date == ""
    errs = cache.errors["c-dull"]
    assert any(e["stage"] == "dates" and e["code"] == "E_NO_DATE" for e in errs)


def test_degraded_row_empty_registry():
    doc = make_doc("c-reg", FULL_DOC_BODY)
    cache = warm_cache([doc], [])
    errs = cache.errors["c-reg"]
    assert any(e["stage"] == "parties" and e["code"] == "E_NO_REGISTRY"
               for e in errs)
    assert cache.row("c-reg").parties == ""


def test_happy_row_fields():
    doc = make_doc("c-full", FULL_DOC_BODY)
    cache = warm_cache([doc], REG)
    row = cache.row("c-full")
    assert row.effective_date == "13/06/2005"
    assert row.termination_date == "13/06/2008"
    assert row.evergreen == "false"
    assert "fund:Harborview Balanced Fund" in row.parties
    assert row.is_master == "true"  # no master reference means self-master
    assert row.master_id == "c-full"


def test_provenance_points_at_real_spans(snapshot7):
    checked = 0
    for cid, prov in snapshot7.cache.provenance.items():
        doc = snapshot7.docs[cid]
        n = len(doc.sections)
        for key in ("effective", "master", "dated", "termination"):
            ordinal = prov.get(key)
            if ordinal is not None:
                assert 0 <= ordinal < n, (cid, key, ordinal)
                checked += 1
        for ordinal in prov["parties"].values():
            if ordinal is not None:
                assert 0 <= ordinal < n
                checked += 1
    assert checked > 50


def test_master_links_match_manifest(snapshot7):
    manifest = snapshot7.manifest
    wrong = []
    for fam in manifest.families:
        for cid in [fam.master_id, *fam.amendment_ids]:
            row = snapshot7.cache.row(cid)
            if row.master_id and row.master_id != fam.master_id:
                wrong.append(cid)
            if cid == fam.master_id and row.is_master == "false":
                wrong.append(cid)
    assert wrong == []


def test_lifecycle_fields_match_manifest(snapshot7):
    manifest = snapshot7.manifest
    agree = total = 0
    for fam in manifest.families:
        for cid, truth in fam.contracts.items():
            row = snapshot7.cache.row(cid)
            total += 1
            if truth["evergreen"]:
                agree += row.evergreen == "true"
            else:
                agree += row.termination_date == truth["termination"]
    assert agree / total >= 0.95


def test_rows_sorted_in_csv(snapshot7):
    lines = snapshot7.cache.to_csv_text().splitlines()
    ids = [line.split(",", 1)[0] for line in lines[1:]]
    assert ids == sorted(ids)
