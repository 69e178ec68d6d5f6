"""Templated query dataset with manifest-derived ground truth.

Truth never comes from the system under test: these scripts read the
generator's manifest (and, for analytical references, the stored section
bodies the manifest points at) and nothing else. Cases are deterministic
per seed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from random import Random

from ..corpus.store import prepare_document
from ..corpus.types import ContractDoc, CorpusManifest, FamilyRecord
from ..errors import ToolError
from ..orchestrator.query import QuerySpec

RETRIEVAL_TASKS = (
    "explore_all",
    "find_master_agreements",
    "find_master_dates",
    "find_termination_dates",
    "find_parties",
)
ANALYTICAL_TASKS = ("summarize_clause", "compare_clause")

ENTITY_COMBOS = (
    ("fund",),
    ("trust",),
    ("custodian",),
    ("fund", "trust"),
    ("fund", "custodian"),
    ("trust", "custodian"),
)

# section labels that make sense to summarize or compare (recitals are
# preamble narration, not an operative clause)
_SKIP_ANALYTICAL = ("recitals", "definitions", "miscellaneous")

COMPARE_HINT = "Only compare subsequent clauses of five sampled non-empty contract sections"


@dataclass
class EvalCase:
    case_id: str
    kind: str  # retrieval | analytical
    query: QuerySpec
    truth: list
    reference: str = ""
    correct_ids: list[str] = field(default_factory=list)
    distractor_ids: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "case_id": self.case_id,
            "kind": self.kind,
            "query": self.query.to_dict(),
            "truth": self.truth,
            "reference": self.reference,
            "correct_ids": self.correct_ids,
            "distractor_ids": self.distractor_ids,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EvalCase":
        q = data["query"]
        query = QuerySpec(q["task"], dict(q.get("entities", {})),
                          q.get("clause_label"), q.get("hint"))
        return cls(data["case_id"], data["kind"], query, data["truth"],
                   data.get("reference", ""), list(data.get("correct_ids", [])),
                   list(data.get("distractor_ids", [])))


def _family_party(family: FamilyRecord, role: str) -> str:
    for p in family.parties:
        if p["role"] == role:
            return p["name"]
    raise ToolError("E_INSUFFICIENT_CORPUS", f"family {family.master_id} has no {role}")


def _matching_families(manifest: CorpusManifest, entities: dict[str, str]) -> list[FamilyRecord]:
    out = []
    for fam in manifest.families:
        have = {(p["role"], p["name"]) for p in fam.parties}
        if all((role, name) in have for role, name in entities.items()):
            out.append(fam)
    return out


def _contracts_of(families: list[FamilyRecord]) -> list[str]:
    cids: list[str] = []
    for fam in families:
        cids.append(fam.master_id)
        cids.extend(fam.amendment_ids)
    return sorted(cids)


def _truth_for(task: str, manifest: CorpusManifest, entities: dict[str, str]) -> list:
    families = _matching_families(manifest, entities)
    cids = _contracts_of(families)
    truth_of = {cid: fam.contracts[cid] for fam in families
                for cid in [fam.master_id, *fam.amendment_ids]}
    master_of = {cid: fam.master_id for fam in families
                 for cid in [fam.master_id, *fam.amendment_ids]}
    if task == "explore_all":
        return cids
    if task == "find_master_agreements":
        return [[cid, master_of[cid]] for cid in cids]
    if task == "find_master_dates":
        return [[cid, truth_of[cid]["master"]] for cid in cids]
    if task == "find_termination_dates":
        return [[cid, truth_of[cid]["termination"] or "evergreen"] for cid in cids]
    if task == "find_parties":
        pairs = {(p["role"], p["name"]) for fam in families for p in fam.parties}
        return [list(p) for p in sorted(pairs)]
    raise ValueError(f"no truth script for task {task!r}")


def _true_section_body(doc: ContractDoc, truth: dict, label: str) -> str | None:
    """Locate the clause body via the manifest's section label list.

    Generated docs sectionize 1:1 with the manifest (the recitals span is
    ordinal 0 and carries the title heading), so the label index is the
    ordinal. The heading check guards against sectionizer drift.
    """
    labels = truth["section_labels"]
    if label not in labels:
        return None
    ordinal = labels.index(label)
    if ordinal >= len(doc.sections):
        return None
    span = doc.sections[ordinal]
    if span.heading_text != truth["section_headings"][ordinal]:
        return None
    return span.body_text


def _analytical_reference(
    label: str,
    families: list[FamilyRecord],
    docs: dict[str, ContractDoc],
) -> str:
    dated: list[tuple[str, str, str]] = []  # (effective, cid, body)
    for fam in families:
        for cid in [fam.master_id, *fam.amendment_ids]:
            doc = docs.get(cid)
            if doc is None:
                continue
            truth = fam.contracts[cid]
            body = _true_section_body(doc, truth, label)
            if body:
                # DD/MM/YYYY -> sortable YYYYMMDD
                d, m, y = truth["effective"].split("/")
                dated.append((y + m + d, cid, body))
    dated.sort()
    return "\n\n".join(body for _, _, body in dated)


def _pick_distractors(manifest: CorpusManifest, correct: list[str],
                      rng: Random, n: int = 4) -> list[str]:
    pool = [cid for cid in manifest.all_contract_ids() if cid not in set(correct)]
    rng.shuffle(pool)
    return sorted(pool[:n])


def build_dataset(
    manifest: CorpusManifest,
    docs: dict[str, ContractDoc] | None = None,
    n_retrieval_per_combo: int = 20,
    n_analytical: int = 10,
    seed: int = 0,
) -> list[EvalCase]:
    """The templated query set: every (task, entity-combo) cell, seeded."""
    if not manifest.families:
        raise ToolError("E_INSUFFICIENT_CORPUS", "manifest has no families")
    if docs:
        # raw generator docs have no spans yet; sectionize copies so reference
        # extraction sees real bodies without mutating the caller's objects
        docs = {cid: (d if d.sections else prepare_document(replace(d)))
                for cid, d in docs.items()}
    rng = Random(seed)
    families = manifest.families
    cases: list[EvalCase] = []

    def sample_entities(combo: tuple[str, ...]) -> dict[str, str]:
        # some families have no trust; only sample ones covering the combo
        eligible = [fam for fam in families
                    if set(combo) <= {p["role"] for p in fam.parties}]
        if not eligible:
            raise ToolError("E_INSUFFICIENT_CORPUS",
                            f"no family carries roles {combo}")
        fam = rng.choice(eligible)
        return {role: _family_party(fam, role) for role in combo}

    for task in RETRIEVAL_TASKS:
        for combo in ENTITY_COMBOS:
            for i in range(n_retrieval_per_combo):
                entities = sample_entities(combo)
                truth = _truth_for(task, manifest, entities)
                if not truth:
                    raise ToolError("E_INSUFFICIENT_CORPUS",
                                    f"no truth for {task} over {entities}")
                matched = _contracts_of(_matching_families(manifest, entities))
                correct = matched[:4]
                case = EvalCase(
                    case_id=f"{task}-{'_'.join(combo)}-{i:03d}",
                    kind="retrieval",
                    query=QuerySpec(task, entities),
                    truth=truth,
                    correct_ids=correct,
                    distractor_ids=_pick_distractors(manifest, matched, rng),
                )
                cases.append(case)

    for task in ANALYTICAL_TASKS:
        for combo in ENTITY_COMBOS:
            for i in range(n_analytical):
                entities = sample_entities(combo)
                matched_fams = _matching_families(manifest, entities)
                anchor = matched_fams[0]
                labels = [lb for lb in anchor.contracts[anchor.master_id]["section_labels"]
                          if lb not in _SKIP_ANALYTICAL]
                label = rng.choice(labels)
                reference = (_analytical_reference(label, matched_fams, docs)
                             if docs else "")
                matched = _contracts_of(matched_fams)
                case = EvalCase(
                    case_id=f"{task}-{'_'.join(combo)}-{i:03d}",
                    kind="analytical",
                    query=QuerySpec(task, entities, clause_label=label,
                                    hint=COMPARE_HINT if task == "compare_clause" else None),
                    truth=[],
                    reference=reference,
                    correct_ids=matched[:4],
                    distractor_ids=_pick_distractors(manifest, matched, rng),
                )
                cases.append(case)
    return cases


def save_dataset(cases: list[EvalCase], path: str | Path) -> None:
    payload = [c.to_dict() for c in cases]
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                          encoding="utf-8")


def load_dataset(path: str | Path) -> list[EvalCase]:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    return [EvalCase.from_dict(item) for item in payload]
