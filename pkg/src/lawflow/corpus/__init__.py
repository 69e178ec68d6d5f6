from .fetch import FetchRecord, TokenBucket, fetch_remote
from .markup import normalize_markup
from .sectionize import classify_heading, detect_headings, sectionize
from .store import CorpusStore, ingest_documents, prepare_document
from .synth import CUSTODIAN_POOL, FLAGSHIP_FUND, HEADING_STYLES, generate_corpus, registry_entries
from .types import (
    CLAUSE_LABELS,
    UNKNOWN_LABEL,
    ContractDoc,
    CorpusManifest,
    FamilyRecord,
    SectionSpan,
)

__all__ = [
    "CLAUSE_LABELS",
    "CUSTODIAN_POOL",
    "ContractDoc",
    "CorpusManifest",
    "CorpusStore",
    "FLAGSHIP_FUND",
    "FamilyRecord",
    "FetchRecord",
    "HEADING_STYLES",
    "SectionSpan",
    "TokenBucket",
    "UNKNOWN_LABEL",
    "classify_heading",
    "detect_headings",
    "fetch_remote",
    "generate_corpus",
    "ingest_documents",
    "normalize_markup",
    "prepare_document",
    "registry_entries",
    "sectionize",
]
