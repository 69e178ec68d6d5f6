"""Template planner, hint parsing, fault injection, and the repair loop."""

from dataclasses import dataclass

import pytest

from lawflow.extraction.dates import CalendarDate
from lawflow.plan.parser import parse_plan
from lawflow.plan.planner import (MockPlanner, apply_repairs, compile_template,
                                  plan_and_repair)
from lawflow.plan.registry import default_registry
from lawflow.plan.validate import check_tools
from lawflow.plan.values import ContractRef, SectionRef

TASKS = ["explore_all", "find_master_agreements", "find_master_dates",
         "find_termination_dates", "find_parties", "find_clause",
         "summarize_clause", "compare_clause"]

CLAUSE_TASKS = {"find_clause", "summarize_clause", "compare_clause"}


@dataclass
class Query:
    task: str
    entities: dict
    clause_label: str = None
    hint: str = None


def bindings():
    ref = ContractRef("c1")
    section = SectionRef("c1", 3, "termination", "Section 9. Termination",
                         "Terminates on 13/06/2008.")
    return {
        "get_agreements_for": lambda **kw: [("Fund <> Bank", ref)],
        "get_dates": lambda contracts, kind: [("c1", CalendarDate(2005, 6, 13))],
        "get_parties": lambda contracts: [("fund", "A Fund")],
        "get_lifecycle": lambda contracts: [("c1", "13/06/2008")],
        "get_master": lambda contracts: [("c1", ref)],
        "get_section_v2": lambda agg_list, section_name: [section],
        "get_summary_v1": lambda text_list: "summary",
        "get_comparison_v1": lambda list_agreement_tuples, text_list: "cmp",
    }


@pytest.fixture(scope="module")
def registry():
    return default_registry()


# -- templates --------------------------------------------------------------------


@pytest.mark.parametrize("task", TASKS)
def test_every_template_parses_and_validates(task, registry):
    clause = "termination" if task in CLAUSE_TASKS else None
    source = compile_template(task, {"fund": "Oakfield Fund"}, clause)
    program = parse_plan(source)
    report = check_tools(program, registry)
    assert report.passed, report.diagnostics


def test_template_entity_args():
    source = compile_template(
        "explore_all",
        {"fund": "Oakfield Fund", "custodian": "Meridian Bank"})
    assert 'funds="Oakfield Fund"' in source
    assert 'custodians="Meridian Bank"' in source
    assert "trusts=" not in source
    assert "Oakfield Fund" in source.split("else")[1]  # none-found message


def test_clause_task_requires_label():
    with pytest.raises(ValueError):
        compile_template("summarize_clause", {"fund": "F"})


def test_unknown_task_rejected():
    with pytest.raises(ValueError):
        compile_template("count_pages", {"fund": "F"})


def test_sample_hint_included():
    source = compile_template("summarize_clause", {"fund": "F"},
                              "fee schedule", sample_k=4)
    assert "sample(sections, 4)" in source
    assert "text_list=picked" in source
    without = compile_template("summarize_clause", {"fund": "F"}, "fee schedule")
    assert "sample" not in without


def test_comparison_template_passes_agreement_tuples():
    source = compile_template("compare_clause", {"fund": "F"}, "termination")
    assert "list_agreement_tuples=agreements" in source
    assert "text_list=sections" in source


# -- hint parsing -------------------------------------------------------------------


@pytest.mark.parametrize("hint,k", [
    ("sample 5 of them", 5),
    ("Sample three sections", 3),
    ("please sample twelve", 12),
    ("just a few", None),          # no "sample" keyword
    ("sample some of them", None), # no count
    (None, None),
    ("SAMPLE 2", 2),
])
def test_hint_sample_k(hint, k, registry):
    planner = MockPlanner()
    query = Query("summarize_clause", {"fund": "F"}, "fee schedule", hint)
    source = planner.propose(query, registry, None, 1)
    if k is None:
        assert "sample(" not in source
    else:
        assert f"sample(sections, {k})" in source


# -- fault modes --------------------------------------------------------------------


def test_clean_planner_one_attempt(registry):
    run = plan_and_repair(Query("find_parties", {"fund": "F"}),
                          MockPlanner(), registry, bindings())
    assert run.ok
    assert len(run.attempts) == 1
    assert run.result == [("fund", "A Fund")]
    assert [r.tier for r in run.reports] == ["syntax", "hallucination", "runtime"]
    assert all(r.passed for r in run.reports)


def test_typo_fault_repaired_second_attempt(registry):
    run = plan_and_repair(Query("find_termination_dates", {"fund": "F"}),
                          MockPlanner(fault="typo"), registry, bindings())
    assert run.ok
    assert len(run.attempts) == 2
    first = run.attempts[0]
    assert "get_agrements_for" in first.source
    hall = first.reports[1]
    assert not hall.passed
    assert hall.diagnostics[0].code == "E_UNKNOWN_TOOL"
    assert "get_agrements_for" not in run.source
    assert run.result == [("c1", "13/06/2008")]


def test_bad_kwarg_fault_repaired(registry):
    run = plan_and_repair(Query("find_parties", {"fund": "F"}),
                          MockPlanner(fault="bad_kwarg"), registry, bindings())
    assert run.ok
    assert len(run.attempts) == 2
    assert 'scope="all"' in run.attempts[0].source
    assert 'scope="all"' not in run.source
    hall = run.attempts[0].reports[1]
    assert any(d.code == "E_BAD_KWARG" for d in hall.diagnostics)


def test_garbage_fault_exhausts(registry):
    run = plan_and_repair(Query("explore_all", {"fund": "F"}),
                          MockPlanner(fault="garbage"), registry, bindings(),
                          max_attempts=3)
    assert not run.ok
    assert run.result is None and run.source is None
    assert len(run.attempts) == 3
    assert run.error.code == "E_EXHAUSTED"
    assert "3 attempts" in run.error.message
    for attempt in run.attempts:
        assert not attempt.reports[0].passed
        assert attempt.reports[0].tier == "syntax"


def test_max_attempts_validation(registry):
    with pytest.raises(ValueError):
        plan_and_repair(Query("explore_all", {"fund": "F"}),
                        MockPlanner(), registry, bindings(), max_attempts=0)


def test_runtime_failure_retries_then_exhausts(registry):
    # validation passes but the tool fails every time
    bound = bindings()
    bound["get_agreements_for"] = lambda **kw: 1 / 0
    run = plan_and_repair(Query("explore_all", {"fund": "F"}),
                          MockPlanner(), registry, bound, max_attempts=2)
    assert not run.ok
    assert run.error.code == "E_EXHAUSTED"
    runtime = run.attempts[-1].reports[-1]
    assert runtime.tier == "runtime" and not runtime.passed


def test_empty_corpus_takes_else_branch(registry):
    bound = bindings()
    bound["get_agreements_for"] = lambda **kw: []
    run = plan_and_repair(Query("find_parties", {"fund": "Ghost Fund"}),
                          MockPlanner(), registry, bound)
    assert run.ok
    assert run.result == "No agreements found for Fund 'Ghost Fund'"


# -- apply_repairs ------------------------------------------------------------------


def test_apply_repairs_tool_rename(registry):
    source = 'let a = get_agrements_for(funds="F")\nreturn a'
    program, syntax = (parse_plan(source), None)
    report = check_tools(program, registry)
    fixed = apply_repairs(source, [report])
    assert "get_agreements_for" in fixed
    assert check_tools(parse_plan(fixed), registry).passed


def test_apply_repairs_drops_bad_kwarg(registry):
    source = ('let a = get_agreements_for(scope="all", funds="F")\n'
              "return a")
    report = check_tools(parse_plan(source), registry)
    fixed = apply_repairs(source, [report])
    assert "scope" not in fixed
    assert 'funds="F"' in fixed
    assert check_tools(parse_plan(fixed), registry).passed


def test_apply_repairs_no_suggestion_leaves_source(registry):
    source = "let a = frobnicate(x=1)\nreturn a"
    report = check_tools(parse_plan(source), registry)
    assert apply_repairs(source, [report]) == source
