#!/usr/bin/env python3
"""Regenerate the UI test fixtures from the real service.

Builds a small synthetic corpus, stands the HTTP app up in-process, and
freezes actual wire responses under tests/fixtures/. Also emits
src/generated.ts so the form vocabulary (tasks, clause labels, entity keys)
can never drift from the backend.

Run from anywhere; the lawflow package must be importable (pip install -e).
"""

from __future__ import annotations

import json
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from lawflow.corpus.synth import generate_corpus, registry_entries
from lawflow.corpus.types import CLAUSE_LABELS
from lawflow.errors import ToolError
from lawflow.extraction.parties import RegistryEntry
from lawflow.orchestrator.engine import Engine, build_snapshot_from_docs
from lawflow.orchestrator.query import CLAUSE_TASKS, ENTITY_KEYS, TASKS, QuerySpec
from lawflow.orchestrator.service import create_app

FRONTEND = Path(__file__).resolve().parents[1]
FIXTURES = FRONTEND / "tests" / "fixtures"

# seed 802 gives the lead family five contracts that all carry an
# "authorized persons" section, so the sampled comparison has 4 deltas
SEED = 802
N_FAMILIES = 6

COMPARE_HINT = (
    "Only compare subsequent clauses of five sampled non-empty contract "
    "sections. Ensure that there are also contracts for this entity choice."
)


def dump(name: str, payload) -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    path = FIXTURES / name
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {path.relative_to(FRONTEND)}")


def ts_list(values) -> str:
    inner = ", ".join(json.dumps(v) for v in values)
    return f"[{inner}] as const"


def emit_generated_ts() -> None:
    path = FRONTEND / "src" / "generated.ts"
    lines = [
        "// GENERATED by scripts/make_fixtures.py; do not edit by hand.",
        "// The form vocabulary, copied verbatim from the service.",
        "",
        f"export const TASKS = {ts_list(TASKS)};",
        f"export const CLAUSE_TASKS = {ts_list(CLAUSE_TASKS)};",
        f"export const ENTITY_KEYS = {ts_list(ENTITY_KEYS)};",
        f"export const CLAUSE_LABELS = {ts_list(CLAUSE_LABELS)};",
        "",
    ]
    path.write_text("\n".join(lines), encoding="utf-8")
    print(f"wrote {path.relative_to(FRONTEND)}")


# -- validation parity ------------------------------------------------------

FUND = "Alpha Growth Fund"

# (name, body, check_message): check_message is False where Python's string
# coercion artifacts would differ from a faithful JS mirror
CASES = [
    ("explore_minimal",
     {"task": "explore_all", "entities": {"fund": FUND}}, True),
    ("all_entities",
     {"task": "find_parties",
      "entities": {"fund": FUND, "trust": "Alpha Trust", "custodian": "Big Bank"}},
     True),
    ("clause_task_ok",
     {"task": "find_clause", "entities": {"fund": FUND},
      "clause_label": "termination"}, True),
    ("summarize_ok",
     {"task": "summarize_clause", "entities": {"trust": "Alpha Trust"},
      "clause_label": "fee schedule"}, True),
    ("compare_ok",
     {"task": "compare_clause", "entities": {"fund": FUND},
      "clause_label": "authorized persons", "hint": COMPARE_HINT}, True),
    ("hint_on_plain_task",
     {"task": "find_master_dates", "entities": {"custodian": "Big Bank"},
      "hint": "check every family"}, True),
    ("padded_entity",
     {"task": "explore_all", "entities": {"fund": "  Harborview  "}}, True),
    ("numeric_entity_value",
     {"task": "explore_all", "entities": {"fund": 12}}, True),
    ("blank_second_entity",
     {"task": "explore_all", "entities": {"fund": FUND, "trust": ""}}, True),
    ("blank_clause_on_plain_task",
     {"task": "explore_all", "entities": {"fund": FUND}, "clause_label": ""},
     True),
    ("null_clause_on_plain_task",
     {"task": "explore_all", "entities": {"fund": FUND}, "clause_label": None},
     True),
    ("unknown_task",
     {"task": "find_everything", "entities": {"fund": FUND}}, True),
    ("missing_task",
     {"entities": {"fund": FUND}}, True),
    ("null_task",
     {"task": None, "entities": {"fund": FUND}}, True),
    ("no_entities",
     {"task": "explore_all", "entities": {}}, True),
    ("entities_missing",
     {"task": "explore_all"}, True),
    ("blank_entity_only",
     {"task": "explore_all", "entities": {"fund": ""}}, True),
    ("whitespace_entity",
     {"task": "explore_all", "entities": {"fund": "   "}}, True),
    ("whitespace_second_entity",
     {"task": "explore_all", "entities": {"fund": FUND, "trust": " \t "}}, True),
    ("unknown_entity_key",
     {"task": "explore_all", "entities": {"fund": FUND, "advisor": "Y"}}, True),
    ("two_unknown_keys",
     {"task": "explore_all", "entities": {"beta": "b", "alpha": "a"}}, True),
    ("clause_missing",
     {"task": "find_clause", "entities": {"fund": FUND}}, True),
    ("blank_clause_on_clause_task",
     {"task": "summarize_clause", "entities": {"fund": FUND},
      "clause_label": ""}, True),
    ("clause_unknown",
     {"task": "compare_clause", "entities": {"fund": FUND},
      "clause_label": "arbitration"}, True),
    ("clause_on_plain_task",
     {"task": "explore_all", "entities": {"fund": FUND},
      "clause_label": "termination"}, True),
    ("extra_field",
     {"task": "explore_all", "entities": {"fund": FUND}, "page": 3}, True),
    ("two_extra_fields",
     {"task": "explore_all", "entities": {"fund": FUND},
      "page": 3, "sort": "asc"}, True),
    ("entities_list",
     {"task": "explore_all", "entities": ["fund"]}, True),
    ("entities_string",
     {"task": "explore_all", "entities": "fund=x"}, True),
    ("body_not_object", ["task", "explore_all"], True),
    ("body_string", "explore_all", True),
]


def validation_cases() -> list[dict]:
    out = []
    for name, body, check_message in CASES:
        record: dict = {"name": name, "body": body, "check_message": check_message}
        try:
            QuerySpec.from_dict(body)
        except ToolError as err:
            record.update(valid=False, code=err.code, locus=err.locus,
                          message=err.message)
        else:
            record.update(valid=True)
        out.append(record)
    n_valid = sum(1 for r in out if r["valid"])
    assert n_valid == 11, f"expected 11 valid cases, found {n_valid}"
    return out


# -- service fixtures --------------------------------------------------------

def family_parties(manifest, idx: int) -> dict[str, str]:
    return {p["role"]: p["name"] for p in manifest.families[idx].parties}


def main() -> None:
    docs, manifest = generate_corpus(SEED, n_families=N_FAMILIES)
    entries = [RegistryEntry(e["name"], e["role"]) for e in registry_entries(manifest)]
    lead = family_parties(manifest, 0)

    with tempfile.TemporaryDirectory() as root:
        snapshot = build_snapshot_from_docs(root, docs, entries, manifest)
        engine = Engine(snapshot)
        client = TestClient(create_app(engine))

        def query(body: dict) -> dict:
            resp = client.post("/query", json=body)
            assert resp.status_code == 200, (resp.status_code, resp.text)
            return resp.json()

        explore = query({"task": "explore_all", "entities": {"fund": lead["fund"]}})
        assert explore["result_kind"] == "contract_pairs"
        dump("explore_envelope.json", explore)

        compare = query({
            "task": "compare_clause",
            "entities": {"fund": lead["fund"]},
            "clause_label": "authorized persons",
            "hint": COMPARE_HINT,
        })
        n_deltas = len(compare["comparison"]["deltas"])
        assert n_deltas == 4, f"comparison fixture needs 4 deltas, got {n_deltas}"
        dump("compare_envelope.json", compare)

        termination = query({
            "task": "find_termination_dates",
            "entities": {"fund": lead["fund"]},
        })
        assert termination["result_kind"] == "string_pairs"
        dump("termination_envelope.json", termination)

        find_clause = query({
            "task": "find_clause",
            "entities": {"fund": lead["fund"]},
            "clause_label": "termination",
        })
        assert find_clause["result_kind"] == "sections"
        dump("find_clause_envelope.json", find_clause)

        # a fund paired with another family's custodian: resolves, matches nothing
        other = next(
            family_parties(manifest, i)["custodian"]
            for i in range(1, N_FAMILIES)
            if family_parties(manifest, i)["custodian"]
            != family_parties(manifest, 1)["custodian"]
        )
        empty = query({
            "task": "explore_all",
            "entities": {"fund": family_parties(manifest, 1)["fund"],
                         "custodian": other},
        })
        assert empty["result_kind"] == "text"
        assert str(empty["result"]).startswith("No agreements found")
        dump("empty_envelope.json", empty)

        missing = client.post("/query", json={
            "task": "explore_all",
            "entities": {"fund": "Zephyr Orbital Shipping Concern"},
        })
        assert missing.status_code == 404, missing.text
        problem = missing.json()
        assert problem["code"] == "E_UNKNOWN_ENTITY"
        dump("problem_unknown_entity.json",
             {"status": missing.status_code, "problem": problem})

        rows = client.get("/contracts").json()
        assert any(r["is_master"] == "true" for r in rows)
        assert any(r["is_master"] == "false" for r in rows)
        dump("contracts_list.json", rows)

        master_id = manifest.families[0].master_id
        detail = client.get(f"/contracts/{master_id}").json()
        dump("contract_detail.json", detail)
        sections = client.get(f"/contracts/{master_id}/sections").json()
        assert all(s["body_text"] for s in sections[1:])
        dump("contract_sections.json", sections)

    dump("validation_cases.json", validation_cases())
    emit_generated_ts()
    print("done")


if __name__ == "__main__":
    main()
