from .bm25 import (
    SearchIndex,
    SectionEntry,
    build_index,
    load_index,
    save_index,
    search_sections,
    tokenize,
)
from .labels import (
    HEADING_ALIASES,
    KeywordLabeler,
    LabeledSection,
    SectionLabeler,
    load_lexicons,
    normalize_heading,
)

__all__ = [
    "HEADING_ALIASES",
    "KeywordLabeler",
    "LabeledSection",
    "SearchIndex",
    "SectionEntry",
    "SectionLabeler",
    "build_index",
    "load_index",
    "load_lexicons",
    "normalize_heading",
    "save_index",
    "search_sections",
    "tokenize",
]
