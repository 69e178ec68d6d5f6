"""Date literal spotting and cue-window kind assignment."""

import pytest

from lawflow.errors import ToolError
from lawflow.extraction.dates import (CalendarDate, RegexDateSpotter,
                                      extract_dates, find_date_literals)


def spot_one(text):
    spotted = RegexDateSpotter().spot(text)
    assert len(spotted) == 1, spotted
    return spotted[0]


@pytest.mark.parametrize("text,expected", [
    ("June 1, 2005", "01/06/2005"),
    ("JUNE 1, 2005", "01/06/2005"),
    ("13th day of June, 2005", "13/06/2005"),
    ("2nd day of March 1999", "02/03/1999"),
    ("13 June 2005", "13/06/2005"),
    ("13/06/2005", "13/06/2005"),   # day > 12: unambiguous DD/MM
    ("06/13/2005", "13/06/2005"),   # month > 12 impossible: MM/DD
    ("07/07/2005", "07/07/2005"),   # equal fields are safe either way
])
def test_literal_forms(text, expected):
    assert spot_one(text).date.render() == expected


def test_ambiguous_numeric_skipped():
    assert RegexDateSpotter().spot("03/04/2005") == []


def test_invalid_date_skipped():
    assert RegexDateSpotter().spot("February 30, 2005") == []


def test_literals_in_document_order():
    text = "dated 13 June 2005 and later June 1, 2007 and 13/02/2008"
    dates = [s.date.render() for s in find_date_literals(text)]
    assert dates == ["13/06/2005", "01/06/2007", "13/02/2008"]


def test_overlapping_spans_not_double_counted():
    # "1 June 2005" could also feed the numeric pattern's year; one hit only
    assert len(find_date_literals("on 1 June 2005.")) == 1


def test_effective_cue():
    b = extract_dates("This Agreement is effective as of June 1, 2005.")
    assert b.effective == CalendarDate(2005, 6, 1)
    assert b.evidence["effective"].cue.startswith("effective as of")


def test_dated_cue():
    b = extract_dates(
        "CUSTODY AGREEMENT made as of this 13th day of June, 2005, "
        "by and between the parties. It is effective as of June 20, 2005.")
    assert b.dated == CalendarDate(2005, 6, 13)
    assert b.effective == CalendarDate(2005, 6, 20)


def test_master_reference_cue():
    b = extract_dates(
        "AMENDMENT effective as of March 1, 2007, to the Custody Agreement, "
        "dated as of June 1, 2005, between the parties.")
    assert b.effective == CalendarDate(2007, 3, 1)
    assert b.master == CalendarDate(2005, 6, 1)


def test_self_master_when_no_reference():
    b = extract_dates("This Agreement is effective as of June 1, 2005.")
    assert b.master == b.effective
    assert b.evidence["master"].cue == "self (no master reference)"


def test_first_cue_match_wins_per_kind():
    b = extract_dates(
        "effective as of June 1, 2005. Also effective as of July 9, 2006.")
    assert b.effective == CalendarDate(2005, 6, 1)


def test_no_literal_raises():
    with pytest.raises(ToolError) as err:
        extract_dates("no dates to be found here")
    assert err.value.code == "E_NO_DATE"


def test_uncued_literal_sets_nothing():
    b = extract_dates("the meeting of June 1, 2005 was long. "
                      "This Agreement is effective as of July 2, 2006.")
    assert b.effective == CalendarDate(2006, 7, 2)
    assert b.dated is None


def test_generator_wordings_extract(corpus7):
    # every synthetic contract's truth dates must round-trip the extractor
    docs, manifest = corpus7
    for doc in docs[:12]:
        truth = manifest.contract_truth(doc.contract_id)
        b = extract_dates(doc.plain_text)
        assert b.effective is not None
        assert b.effective.render() == truth["effective"]
        assert b.master is not None and b.master.render() == truth["master"]
        assert b.dated is not None and b.dated.render() == truth["dated"]
        for kind in ("effective", "master", "dated"):
            ev = b.evidence[kind]
            assert doc.plain_text[ev.start:ev.end] == ev.literal
