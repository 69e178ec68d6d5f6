"""Deterministic extraction tools: the three date kinds and involved parties."""

from .dates import (
    CalendarDate,
    DateBundle,
    DateEvidence,
    DateSpotter,
    RegexDateSpotter,
    SpottedDate,
    extract_dates,
    find_date_literals,
)
from .parties import (
    PartyRecord,
    RegistryEntry,
    extract_parties,
    levenshtein,
    normalize_name,
    similarity,
)

__all__ = [
    "CalendarDate",
    "DateBundle",
    "DateEvidence",
    "DateSpotter",
    "RegexDateSpotter",
    "SpottedDate",
    "extract_dates",
    "find_date_literals",
    "PartyRecord",
    "RegistryEntry",
    "extract_parties",
    "levenshtein",
    "normalize_name",
    "similarity",
]
