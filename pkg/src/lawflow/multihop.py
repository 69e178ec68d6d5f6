"""Multi-hop reasoning tools: termination-date computation and master linking.

Calendar arithmetic uses month-end clamping: 31 Jan + 1 month lands on the
last day of February, 29 Feb + 1 year on 28 Feb. Duration phrases are parsed
from digits ("3 years"), number words ("thirty-six months"), and dual forms
("three (3) years", where the parenthesized digit wins any disagreement).
"""

from __future__ import annotations

import calendar as _cal
import datetime as _dt
import re
from dataclasses import dataclass

from .errors import ToolError
from .extraction.dates import CalendarDate, DateBundle, find_date_literals
from .extraction.parties import normalize_name

UNITS = ("years", "months", "days")

_ONES = {
    "one": 1, "two": 2, "three": 3, "four": 4, "five": 5, "six": 6, "seven": 7,
    "eight": 8, "nine": 9, "ten": 10, "eleven": 11, "twelve": 12, "thirteen": 13,
    "fourteen": 14, "fifteen": 15, "sixteen": 16, "seventeen": 17, "eighteen": 18,
    "nineteen": 19, "twenty": 20,
}
_TENS = {"twenty": 20, "thirty": 30, "forty": 40, "fifty": 50, "sixty": 60,
         "seventy": 70, "eighty": 80, "ninety": 90}

_WORD_NUM = r"(?:{tens})(?:[-\s](?:{ones}))?|{ones}".format(
    tens="|".join(_TENS), ones="|".join(_ONES)
)
_UNIT = r"(years?|months?|days?)"

_DURATION_RE = re.compile(
    rf"\b(?:(?P<word>{_WORD_NUM})\s*(?:\(\s*(?P<dual>\d+)\s*\)\s*)?|(?P<digit>\d+)\s*)"
    rf"(?P<unit>{_UNIT})\b",
    re.IGNORECASE,
)


def _word_to_number(phrase: str) -> int:
    parts = re.split(r"[-\s]+", phrase.strip().lower())
    total = 0
    for p in parts:
        if p in _TENS and total == 0:
            total += _TENS[p]
        elif p in _ONES:
            total += _ONES[p]
        else:
            raise ValueError(f"not a number word: {p!r}")
    return total


def parse_duration(text: str) -> tuple[int, str] | None:
    """First duration phrase in ``text`` as (count, unit), or None.

    In dual form the parenthesized digit is authoritative: "three (4) years"
    parses as 4 years.
    """
    for m in _DURATION_RE.finditer(text):
        if m.group("dual"):
            count = int(m.group("dual"))
        elif m.group("digit"):
            count = int(m.group("digit"))
        else:
            try:
                count = _word_to_number(m.group("word"))
            except ValueError:
                continue
        if count <= 0:
            continue
        unit = m.group("unit").lower()
        unit = unit if unit.endswith("s") else unit + "s"
        return count, unit
    return None


def calendar_add(date: CalendarDate, count: int, unit: str) -> CalendarDate:
    """Add a duration with month-end clamping for month/year arithmetic."""
    if unit not in UNITS:
        raise ValueError(f"unit must be one of {UNITS}: {unit!r}")
    if unit == "days":
        return CalendarDate.from_date(date.to_date() + _dt.timedelta(days=count))
    months = count * 12 if unit == "years" else count
    index = date.year * 12 + (date.month - 1) + months
    year, month = divmod(index, 12)
    month += 1
    day = min(date.day, _cal.monthrange(year, month)[1])
    return CalendarDate(year, month, day)


@dataclass
class LifecycleEvidence:
    scope: str  # which text was searched: "termination" | "recitals" | "document"
    start: int
    end: int
    snippet: str


@dataclass
class LifecycleResult:
    termination: CalendarDate | None
    basis: str  # explicit_termination_date | effective_plus_duration | evergreen
    duration_term: tuple[int, str] | None
    evidence: LifecycleEvidence | None


_EXPLICIT_TERM_CUE = re.compile(
    r"\b(?:shall\s+)?(?:terminate[s]?\s+on|expire[s]?\s+on|in\s+effect\s+(?:until|through))\b",
    re.IGNORECASE,
)


def _explicit_termination(body: str, not_before: CalendarDate) -> CalendarDate | None:
    for spotted in find_date_literals(body):
        window = body[max(0, spotted.start - 60) : spotted.start]
        if _EXPLICIT_TERM_CUE.search(window) and spotted.date >= not_before:
            return spotted.date
    return None


def compute_lifecycle(
    dates: DateBundle,
    sections: list,
    full_text: str = "",
) -> LifecycleResult:
    """Derive the termination outcome for one contract.

    ``sections`` are labeled SectionSpans; an explicit termination date inside
    the termination section outranks a stated duration, which outranks nothing
    (evergreen). Duration search order: termination section, recitals section,
    whole document.
    """
    if dates.effective is None:
        raise ToolError("E_NO_EFFECTIVE", "no effective date extracted")
    effective = dates.effective

    term_sections = [s for s in sections if s.title_label == "termination"]
    for sec in term_sections:
        explicit = _explicit_termination(sec.body_text, effective)
        if explicit is not None:
            return LifecycleResult(
                termination=explicit,
                basis="explicit_termination_date",
                duration_term=None,
                evidence=LifecycleEvidence("termination", sec.start_offset, sec.end_offset,
                                           sec.body_text[:120]),
            )

    scopes: list[tuple[str, object]] = [("termination", s) for s in term_sections]
    scopes += [("recitals", s) for s in sections if s.title_label == "recitals"]
    if full_text:
        scopes.append(("document", None))
    for scope, sec in scopes:
        body = full_text if sec is None else sec.body_text
        parsed = parse_duration(body)
        if parsed is not None:
            count, unit = parsed
            start = 0 if sec is None else sec.start_offset
            end = len(full_text) if sec is None else sec.end_offset
            return LifecycleResult(
                termination=calendar_add(effective, count, unit),
                basis="effective_plus_duration",
                duration_term=(count, unit),
                evidence=LifecycleEvidence(scope, start, end, body[:120]),
            )
    return LifecycleResult(termination=None, basis="evergreen", duration_term=None, evidence=None)


@dataclass
class MasterLink:
    contract_id: str
    kind: str  # master | amendment
    master_id: str | None


@dataclass
class ContractFeatures:
    """Per-contract extraction outputs resolve_master compares against."""

    contract_id: str
    dates: DateBundle
    party_names: dict[str, set[str]]  # role -> normalized names


def _party_index(parties: list) -> dict[str, set[str]]:
    by_role: dict[str, set[str]] = {}
    for p in parties:
        by_role.setdefault(p.role, set()).add(normalize_name(p.name))
    return by_role


def features_for(contract_id: str, dates: DateBundle, parties: list) -> ContractFeatures:
    return ContractFeatures(contract_id=contract_id, dates=dates, party_names=_party_index(parties))


def _jaccard(a: set[str], b: set[str]) -> float:
    if not a and not b:
        return 0.0
    return len(a & b) / len(a | b)


def resolve_master(doc_features: ContractFeatures, corpus: list[ContractFeatures]) -> MasterLink:
    """Classify master vs amendment and link amendments to their master.

    A master is its own link (effective == master date). An amendment links to
    the unique master whose effective date equals this contract's master date
    and that shares at least one custodian and one fund or trust name; among
    several, the highest party-overlap Jaccard wins, ties stay unresolved.
    """
    dates = doc_features.dates
    if dates.effective is not None and dates.effective == dates.master:
        return MasterLink(doc_features.contract_id, "master", doc_features.contract_id)
    if dates.master is None:
        raise ToolError("E_UNRESOLVED_MASTER", "no master date to match on",
                        locus=doc_features.contract_id)

    own_custodians = doc_features.party_names.get("custodian", set())
    own_funds = (doc_features.party_names.get("fund", set())
                 | doc_features.party_names.get("trust", set()))
    candidates = []
    for other in corpus:
        if other.contract_id == doc_features.contract_id:
            continue
        if other.dates.effective is None or other.dates.effective != dates.master:
            continue
        if other.dates.effective != other.dates.master:
            continue  # only contracts classified master qualify
        their_custodians = other.party_names.get("custodian", set())
        their_funds = (other.party_names.get("fund", set())
                       | other.party_names.get("trust", set()))
        if not (own_custodians & their_custodians) or not (own_funds & their_funds):
            continue
        all_own = set().union(*doc_features.party_names.values()) if doc_features.party_names else set()
        all_theirs = set().union(*other.party_names.values()) if other.party_names else set()
        candidates.append((_jaccard(all_own, all_theirs), other.contract_id))

    if not candidates:
        raise ToolError("E_UNRESOLVED_MASTER", "no master candidate matched dates and parties",
                        locus=doc_features.contract_id)
    candidates.sort(key=lambda c: -c[0])
    if len(candidates) > 1 and candidates[0][0] == candidates[1][0]:
        raise ToolError("E_UNRESOLVED_MASTER", "tied master candidates",
                        locus=doc_features.contract_id)
    return MasterLink(doc_features.contract_id, "amendment", candidates[0][1])
