"""Date extraction: literal recognition plus cue-window kind assignment.

Recognized literal formats:

- ``June 1, 2005`` (month name, day, year)
- ``13th day of June, 2005`` (ordinal day-of form)
- ``13 June 2005``
- ``06/13/2005`` / ``13/06/2005`` -- numeric forms are used only when
  unambiguous; if both leading fields could be a month and they differ, the
  literal is skipped rather than guessed.

Kinds are assigned by a cue phrase inside the 120 characters preceding the
literal: effective ("effective as of", "shall become effective"), dated
("dated as of", "made ... this"), and master (a reference to the original
agreement, "... to the Custody Agreement dated <date>"). The first match in
document order wins per kind. A document with an effective date and no master
reference is its own master. All renderings are DD/MM/YYYY.

The spotting heuristics sit behind the DateSpotter protocol so a learned
span detector can replace them without touching callers.
"""

from __future__ import annotations

import datetime as _dt
import re
from dataclasses import dataclass, field
from typing import Iterable, Protocol

from ..errors import ToolError

MONTHS = {
    name: i + 1
    for i, name in enumerate(
        "january february march april may june july august september october november december".split()
    )
}
_MONTH_RE = "|".join(m.capitalize() for m in MONTHS) + "|" + "|".join(m.upper() for m in MONTHS)


@dataclass(frozen=True, order=True)
class CalendarDate:
    """A valid Gregorian date in [1900, 2100]; canonical form is DD/MM/YYYY."""

    year: int
    month: int
    day: int

    def __post_init__(self):
        if not 1900 <= self.year <= 2100:
            raise ValueError(f"year out of range: {self.year}")
        _dt.date(self.year, self.month, self.day)  # validates month/day

    def render(self) -> str:
        return f"{self.day:02d}/{self.month:02d}/{self.year:04d}"

    @classmethod
    def parse(cls, rendered: str) -> "CalendarDate":
        m = re.fullmatch(r"(\d{2})/(\d{2})/(\d{4})", rendered)
        if not m:
            raise ValueError(f"not a DD/MM/YYYY date: {rendered!r}")
        return cls(year=int(m.group(3)), month=int(m.group(2)), day=int(m.group(1)))

    def to_date(self) -> _dt.date:
        return _dt.date(self.year, self.month, self.day)

    @classmethod
    def from_date(cls, d: _dt.date) -> "CalendarDate":
        return cls(year=d.year, month=d.month, day=d.day)


@dataclass
class DateEvidence:
    start: int
    end: int
    cue: str
    literal: str


@dataclass
class DateBundle:
    effective: CalendarDate | None = None
    master: CalendarDate | None = None
    dated: CalendarDate | None = None
    evidence: dict[str, DateEvidence] = field(default_factory=dict)

    def is_empty(self) -> bool:
        return self.effective is None and self.master is None and self.dated is None


@dataclass
class SpottedDate:
    date: CalendarDate
    start: int
    end: int
    literal: str


class DateSpotter(Protocol):
    def spot(self, text: str) -> list[SpottedDate]: ...


_LITERAL_PATTERNS = [
    # June 1, 2005 / JUNE 1, 2005
    re.compile(rf"\b({_MONTH_RE})\s+(\d{{1,2}})\s*,\s*(\d{{4}})"),
    # 13th day of June, 2005
    re.compile(rf"\b(\d{{1,2}})(?:st|nd|rd|th)?\s+day\s+of\s+({_MONTH_RE})\s*,?\s*(\d{{4}})"),
    # 13 June 2005
    re.compile(rf"\b(\d{{1,2}})\s+({_MONTH_RE})\s+(\d{{4}})\b"),
    # 06/13/2005 or 13/06/2005
    re.compile(r"\b(\d{1,2})/(\d{1,2})/(\d{4})\b"),
]


def _month_number(name: str) -> int:
    return MONTHS[name.lower()]


class RegexDateSpotter:
    """Default literal spotter; returns matches in document order."""

    def spot(self, text: str) -> list[SpottedDate]:
        found: list[SpottedDate] = []
        taken: set[int] = set()
        for idx, pattern in enumerate(_LITERAL_PATTERNS):
            for m in pattern.finditer(text):
                if any(p in taken for p in range(m.start(), m.end())):
                    continue
                date = self._to_date(idx, m)
                if date is None:
                    continue
                taken.update(range(m.start(), m.end()))
                found.append(SpottedDate(date=date, start=m.start(), end=m.end(), literal=m.group(0)))
        found.sort(key=lambda s: s.start)
        return found

    @staticmethod
    def _to_date(pattern_idx: int, m: re.Match) -> CalendarDate | None:
        try:
            if pattern_idx == 0:
                return CalendarDate(int(m.group(3)), _month_number(m.group(1)), int(m.group(2)))
            if pattern_idx in (1, 2):
                return CalendarDate(int(m.group(3)), _month_number(m.group(2)), int(m.group(1)))
            a, b, year = int(m.group(1)), int(m.group(2)), int(m.group(3))
            if a <= 12 and b <= 12 and a != b:
                return None  # ambiguous: skipped, never guessed
            if b > 12:
                return CalendarDate(year, a, b)  # MM/DD
            return CalendarDate(year, b, a)  # DD/MM (covers a == b too)
        except (ValueError, KeyError):
            return None


# Cue patterns evaluated against the window preceding a literal. The master
# reference must name the original agreement via a linking word so that
# "Amendment dated as of <date>" stays a dated cue.
_EFFECTIVE_CUES = [
    re.compile(r"\beffective\s+as\s+of\b[^.]{0,40}$", re.IGNORECASE),
    re.compile(r"\bshall\s+become\s+effective\b[^.]{0,40}$", re.IGNORECASE),
]
_MASTER_REF_CUE = re.compile(
    r"\b(?:to|under|amend(?:s|ing)?)\s+(?:the\s+|that\s+certain\s+)?"
    r"(?:[A-Z][A-Za-z]*\s+){0,4}Agreement,?\s+dated\s+(?:as\s+of\s+)?$"
)
_DATED_CUES = [
    re.compile(r"\bdated\s+as\s+of\s+$", re.IGNORECASE),
    re.compile(r"\bmade\b[^.]{0,100}\bthis\s+$", re.IGNORECASE),
]


def _classify(window: str) -> tuple[str, str] | None:
    """Map a pre-literal window to (kind, cue text); master beats dated beats effective."""
    m = _MASTER_REF_CUE.search(window)
    if m:
        return "master", m.group(0).strip()
    for cue in _DATED_CUES:
        m = cue.search(window)
        if m:
            return "dated", m.group(0).strip()
    for cue in _EFFECTIVE_CUES:
        m = cue.search(window)
        if m:
            return "effective", m.group(0).strip()
    return None


def extract_dates(
    text: str,
    spotter: DateSpotter | None = None,
    cue_window: int = 120,
) -> DateBundle:
    """Extract the three date kinds from contract text.

    Raises ToolError(E_NO_DATE) when no literal is recognized at all.
    """
    spotter = spotter or RegexDateSpotter()
    spotted = spotter.spot(text)
    if not spotted:
        raise ToolError("E_NO_DATE", "no date literal recognized")
    bundle = DateBundle()
    for s in spotted:
        window = text[max(0, s.start - cue_window) : s.start]
        hit = _classify(window)
        if hit is None:
            continue
        kind, cue = hit
        if getattr(bundle, kind) is None:
            setattr(bundle, kind, s.date)
            bundle.evidence[kind] = DateEvidence(start=s.start, end=s.end, cue=cue, literal=s.literal)
    if bundle.effective is not None and bundle.master is None:
        bundle.master = bundle.effective
        ev = bundle.evidence["effective"]
        bundle.evidence["master"] = DateEvidence(ev.start, ev.end, "self (no master reference)", ev.literal)
    return bundle


def find_date_literals(text: str) -> list[SpottedDate]:
    """All date literals in document order (shared with lifecycle and agents)."""
    return RegexDateSpotter().spot(text)
