"""Core corpus records: contracts, section spans, and the ground-truth manifest."""

from __future__ import annotations

from dataclasses import dataclass, field, asdict


# The 20 clause labels every section classifier and lexicon in this package
# speaks, plus "unknown" for anything below threshold.
CLAUSE_LABELS: tuple[str, ...] = (
    "account transactions",
    "authorized persons",
    "definitions",
    "duties and responsibilities",
    "evidence of authority",
    "fee schedule",
    "fees and expenses",
    "foreign custodian and subcustodian",
    "governing law",
    "indemnification",
    "instructions",
    "limitations and scope of use or liability",
    "miscellaneous",
    "nominees",
    "proprietary information",
    "recitals",
    "standard of care liabilities",
    "subcustodians and securities depositories",
    "successor custodian",
    "termination",
)

UNKNOWN_LABEL = "unknown"


@dataclass
class SectionSpan:
    """A labeled, clause-level segment of a contract's plain text."""

    contract_id: str
    ordinal: int
    heading_text: str
    title_label: str
    body_text: str
    start_offset: int
    end_offset: int

    def __post_init__(self):
        if self.start_offset >= self.end_offset:
            raise ValueError(
                f"section span must be non-empty: [{self.start_offset}, {self.end_offset})"
            )
        if self.title_label != UNKNOWN_LABEL and self.title_label not in CLAUSE_LABELS:
            raise ValueError(f"unknown title label: {self.title_label!r}")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "SectionSpan":
        return cls(**data)


@dataclass
class ContractDoc:
    """One ingested contract: raw markup, normalized text, metadata, sections."""

    contract_id: str
    accession_no: str
    source_uri: str
    raw_markup: str
    plain_text: str
    filed_date: str  # DD/MM/YYYY
    metadata_parties: list[str] = field(default_factory=list)
    sections: list[SectionSpan] = field(default_factory=list)

    def section_text(self, ordinal: int) -> str:
        return self.sections[ordinal].body_text


@dataclass
class FamilyRecord:
    """Ground truth for one master + its amendments."""

    master_id: str
    amendment_ids: list[str]
    parties: list[dict]  # {"name": ..., "role": fund|trust|custodian}
    contracts: dict[str, dict]
    # contracts[cid] = {
    #   "effective": "DD/MM/YYYY", "master": "DD/MM/YYYY", "dated": "DD/MM/YYYY",
    #   "duration": [count, unit] | None,
    #   "termination": "DD/MM/YYYY" | None, "evergreen": bool,
    #   "section_labels": [label, ...], "section_headings": [heading, ...],
    #   "heading_style": str,
    # }

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "FamilyRecord":
        return cls(**data)


@dataclass
class CorpusManifest:
    """Seeded ground truth for a generated corpus; consumed only by the eval side."""

    seed: int
    families: list[FamilyRecord]

    def all_contract_ids(self) -> list[str]:
        ids = []
        for fam in self.families:
            ids.append(fam.master_id)
            ids.extend(fam.amendment_ids)
        return ids

    def contract_truth(self, contract_id: str) -> dict:
        for fam in self.families:
            if contract_id in fam.contracts:
                return fam.contracts[contract_id]
        raise KeyError(contract_id)

    def family_of(self, contract_id: str) -> FamilyRecord:
        for fam in self.families:
            if contract_id in fam.contracts:
                return fam
        raise KeyError(contract_id)

    def to_dict(self) -> dict:
        return {"seed": self.seed, "families": [f.to_dict() for f in self.families]}

    @classmethod
    def from_dict(cls, data: dict) -> "CorpusManifest":
        return cls(seed=data["seed"], families=[FamilyRecord.from_dict(f) for f in data["families"]])
