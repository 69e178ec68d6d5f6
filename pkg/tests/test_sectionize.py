"""Heading detection and span tiling."""

import pytest

from lawflow.corpus.sectionize import classify_heading, detect_headings, sectionize
from lawflow.corpus.store import prepare_document
from lawflow.corpus.types import ContractDoc


def doc_of(text):
    return ContractDoc(contract_id="t", accession_no="", source_uri="",
                       raw_markup="", plain_text=text, filed_date="")


@pytest.mark.parametrize("line,kind", [
    ("Section 3. Termination", "numbered"),
    ("SECTION 3.2 Fees", "numbered"),
    ("ARTICLE III", "numbered"),
    ("3. Duties of the Custodian", "numbered"),
    ("12.4. Notices", "numbered"),
    ("INDEMNIFICATION", "allcaps"),
    ("FEES AND EXPENSES", "allcaps"),
    ("Governing Law", "titlecase"),
    ("Duties and Responsibilities of the Custodian", "titlecase"),
])
def test_heading_kinds(line, kind):
    assert classify_heading(line) == kind


@pytest.mark.parametrize("line", [
    "",
    "the custodian shall hold all assets.",
    "This sentence ends with a period.",
    "A VERY LONG ALL CAPS LINE THAT RUNS WELL PAST THE EIGHT WORD CEILING HERE",
    "wherefore the parties agree:",
])
def test_non_headings(line):
    assert classify_heading(line) is None


def test_trailing_titlecase_line_not_heading():
    text = "INDEMNIFICATION\nBody text here.\nMeridian Bank"
    heads = [h[2] for h in detect_headings(text)]
    assert heads == ["INDEMNIFICATION"]


def test_spans_tile_text():
    text = ("THIS AGREEMENT is made by the parties.\n\n"
            "Section 1. Definitions\n\nTerms used herein.\n\n"
            "Section 2. Termination\n\nThree (3) years.")
    spans = sectionize(doc_of(text))
    assert [s.ordinal for s in spans] == [0, 1, 2]
    assert spans[0].start_offset == 0
    assert spans[-1].end_offset == len(text)
    for a, b in zip(spans, spans[1:]):
        assert a.end_offset == b.start_offset
    assert spans[0].heading_text == ""  # preamble
    assert spans[1].heading_text == "Section 1. Definitions"
    assert "Terms used herein." == spans[1].body_text


def test_no_headings_single_span():
    spans = sectionize(doc_of("just one paragraph of text."))
    assert len(spans) == 1
    assert spans[0].ordinal == 0


def test_empty_text_rejected():
    with pytest.raises(ValueError):
        sectionize(doc_of(""))


def test_generated_docs_sectionize_to_manifest_shape(corpus7):
    # spans map 1:1 to manifest sections; recitals carry the title heading
    docs, manifest = corpus7
    for raw in docs[:10]:
        doc = prepare_document(ContractDoc(**{**raw.__dict__, "sections": []}))
        truth = manifest.contract_truth(doc.contract_id)
        assert len(doc.sections) == len(truth["section_labels"])
        got = [s.heading_text for s in doc.sections]
        assert got == truth["section_headings"]
