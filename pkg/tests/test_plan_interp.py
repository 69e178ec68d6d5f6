"""Interpreter behavior: bindings, budgets, traces, and runtime halts."""

import pytest

from lawflow.errors import ToolError
from lawflow.extraction.dates import CalendarDate
from lawflow.plan.interp import execute_plan, trace_digest
from lawflow.plan.parser import parse_plan
from lawflow.plan.registry import default_registry
from lawflow.plan.values import ContractRef, SectionRef, conforms, digest_value
from lawflow.plan.types import parse_type


AGREEMENTS = [("Oakfield Fund <> Meridian Bank", ContractRef("c1")),
              ("Oakfield Fund <> Meridian Bank", ContractRef("c2"))]

SECTION = SectionRef("c1", 4, "termination", "Section 9. Termination",
                     "This agreement terminates on 13/06/2008.")


def stub_bindings(**overrides):
    base = {
        "get_agreements_for": lambda **kw: list(AGREEMENTS),
        "get_dates": lambda contracts, kind: [
            (c.contract_id, CalendarDate(2005, 6, 13)) for c in contracts],
        "get_parties": lambda contracts: [("fund", "Oakfield Fund")],
        "get_lifecycle": lambda contracts: [
            (c.contract_id, "13/06/2008") for c in contracts],
        "get_master": lambda contracts: [
            (c.contract_id, ContractRef("c1")) for c in contracts],
        "get_section_v2": lambda agg_list, section_name: [SECTION],
        "get_summary_v1": lambda text_list: "summary text",
        "get_comparison_v1": lambda list_agreement_tuples, text_list: "comparison text",
    }
    base.update(overrides)
    return base


@pytest.fixture(scope="module")
def registry():
    return default_registry()


def run(source, registry, bindings=None, budget=None):
    program = parse_plan(source)
    return execute_plan(program, registry,
                        bindings if bindings is not None else stub_bindings(),
                        call_budget=budget)


def test_straight_line_execution(registry):
    result, report, trace = run(
        'let a = get_agreements_for(funds="Oakfield Fund")\n'
        'let d = get_dates(contracts=a[1], kind="master")\n'
        "return d", registry)
    assert report.passed and report.tier == "runtime"
    assert result == [("c1", CalendarDate(2005, 6, 13)),
                      ("c2", CalendarDate(2005, 6, 13))]
    assert [e.tool for e in trace] == ["get_agreements_for", "get_dates"]
    assert all(e.outcome == "ok" for e in trace)


def test_pair_index_and_projection(registry):
    result, report, _ = run(
        'let a = get_agreements_for(funds="F")\n'
        "let first = a[0]\n"
        "return first", registry)
    assert report.passed
    assert result == ["Oakfield Fund <> Meridian Bank"] * 2


def test_if_branches_on_emptiness(registry):
    bindings = stub_bindings(get_agreements_for=lambda **kw: [])
    result, report, _ = run(
        'let a = get_agreements_for(funds="F")\n'
        'if not empty(a) { return a } else { return "none found" }',
        registry, bindings)
    assert report.passed
    assert result == "none found"


def test_for_loop_iterates(registry):
    calls = []
    bindings = stub_bindings(
        get_parties=lambda contracts: calls.append(1) or [("fund", "F")])
    result, report, _ = run(
        'let a = get_agreements_for(funds="F")\n'
        "for item in a {\n"
        "    let p = get_parties(contracts=item[1])\n"
        "}\n"
        "return a", registry, bindings)
    assert report.passed
    assert len(calls) == 2


def test_projection_over_non_pairs_halts(registry):
    bindings = stub_bindings(
        get_section_v2=lambda agg_list, section_name: [SECTION])
    _, report, _ = run(
        'let a = get_agreements_for(funds="F")\n'
        'let s = get_section_v2(agg_list=a[1], section_name="termination")\n'
        "let x = s[0]\n"
        "return x", registry, bindings)
    assert not report.passed
    assert report.diagnostics[0].code == "E_RUNTIME_TYPE"
    assert "pairs" in report.diagnostics[0].message


def test_for_over_scalar_halts(registry):
    bindings = stub_bindings(get_summary_v1=lambda text_list: "words")
    _, report, _ = run(
        'let a = get_agreements_for(funds="F")\n'
        'let s = get_section_v2(agg_list=a[1], section_name="termination")\n'
        "let out = get_summary_v1(text_list=s)\n"
        "for w in out { let q = w }\n"
        "return out", registry, bindings)
    assert not report.passed
    assert report.diagnostics[0].code == "E_RUNTIME_TYPE"


def test_sample_stride(registry):
    got = {}
    def catch(text_list):
        got["items"] = list(text_list)
        return "s"
    sections = [SectionRef("c1", i, "termination", f"H{i}", f"body {i}")
                for i in range(10)]
    bindings = stub_bindings(
        get_section_v2=lambda agg_list, section_name: sections,
        get_summary_v1=catch)
    _, report, _ = run(
        'let a = get_agreements_for(funds="F")\n'
        'let s = get_section_v2(agg_list=a[1], section_name="termination")\n'
        "let p = sample(s, 5)\n"
        "let out = get_summary_v1(text_list=p)\n"
        "return out", registry, bindings)
    assert report.passed
    assert got["items"] == sections[::2][:5]


def test_sample_filters_blanks(registry):
    sections = [SECTION, SectionRef("c2", 1, "termination", "H", "   ")]
    got = {}
    def catch(text_list):
        got["n"] = len(text_list)
        return "s"
    bindings = stub_bindings(
        get_section_v2=lambda agg_list, section_name: sections,
        get_summary_v1=catch)
    _, report, _ = run(
        'let a = get_agreements_for(funds="F")\n'
        'let s = get_section_v2(agg_list=a[1], section_name="termination")\n'
        "let p = sample(s, 5)\n"
        "let out = get_summary_v1(text_list=p)\n"
        "return out", registry, bindings)
    assert report.passed
    assert got["n"] == 1


# -- trace ----------------------------------------------------------------------


def test_trace_digest_deterministic(registry):
    source = ('let a = get_agreements_for(funds="F")\n'
              'let d = get_dates(contracts=a[1], kind="master")\n'
              "return d")
    _, _, t1 = run(source, registry)
    _, _, t2 = run(source, registry)
    assert trace_digest(t1) == trace_digest(t2)
    # durations differ run to run but digests exclude them
    assert [e.digest() for e in t1] == [e.digest() for e in t2]


def test_trace_args_are_compact_digests(registry):
    _, _, trace = run(
        'let a = get_agreements_for(funds="Oakfield Fund")\n'
        'let d = get_dates(contracts=a[1], kind="master")\n'
        "return d", registry)
    entry = trace[1]
    assert entry.args["kind"] == "'master'"
    assert entry.args["contracts"] == "[Contract(c1), ...x2]"
    assert entry.to_dict()["duration_ms"] >= 0.0


def test_digest_value_truncates_long_strings():
    assert digest_value("x" * 60) == repr("x" * 37 + "...")
    assert digest_value(CalendarDate(2005, 6, 13)) == "13/06/2005"
    assert digest_value([]) == "[]"


# -- budget ----------------------------------------------------------------------


def test_budget_halts_and_refused_call_untraced(registry):
    _, report, trace = run(
        'let a = get_agreements_for(funds="F")\n'
        "for item in a {\n"
        "    let p = get_parties(contracts=item[1])\n"
        "}\n"
        "return a", registry, budget=2)
    assert not report.passed
    diag = report.diagnostics[0]
    assert diag.code == "E_BUDGET"
    assert "budget of 2" in diag.message
    # exactly budget entries: the refused third call never lands in the trace
    assert len(trace) == 2
    assert [e.outcome for e in trace] == ["ok", "ok"]


def test_budget_of_zero_refuses_first_call(registry):
    _, report, trace = run(
        'let a = get_agreements_for(funds="F")\nreturn a',
        registry, budget=0)
    assert report.diagnostics[0].code == "E_BUDGET"
    assert trace == []


# -- runtime halts ----------------------------------------------------------------


def test_empty_required_list_halts_before_invocation(registry):
    called = []
    bindings = stub_bindings(
        get_agreements_for=lambda **kw: [],
        get_dates=lambda contracts, kind: called.append(1) or [])
    _, report, trace = run(
        'let a = get_agreements_for(funds="F")\n'
        'let d = get_dates(contracts=a[1], kind="master")\n'
        "return d", registry, bindings)
    assert not report.passed
    assert report.diagnostics[0].code == "E_EMPTY_RESULT"
    assert called == []  # never invoked
    entry = trace[-1]
    assert entry.outcome == "E_EMPTY_RESULT"
    assert entry.duration_ms == 0.0


def test_tool_error_preserves_code_in_trace(registry):
    def boom(contracts, kind):
        raise ToolError("E_BAD_KIND", f"unknown date kind {kind!r}")
    bindings = stub_bindings(get_dates=boom)
    _, report, trace = run(
        'let a = get_agreements_for(funds="F")\n'
        'let d = get_dates(contracts=a[1], kind="bogus")\n'
        "return d", registry, bindings)
    diag = report.diagnostics[0]
    assert diag.code == "E_TOOL_FAIL"
    assert "unknown date kind" in diag.message
    assert trace[-1].outcome == "E_BAD_KIND"


def test_tool_error_empty_result_keeps_category(registry):
    def empty_summary(text_list):
        raise ToolError("E_EMPTY_RESULT", "all sections blank")
    bindings = stub_bindings(get_summary_v1=empty_summary)
    _, report, trace = run(
        'let a = get_agreements_for(funds="F")\n'
        'let s = get_section_v2(agg_list=a[1], section_name="termination")\n'
        "let out = get_summary_v1(text_list=s)\n"
        "return out", registry, bindings)
    assert report.diagnostics[0].code == "E_EMPTY_RESULT"
    assert trace[-1].outcome == "E_EMPTY_RESULT"


def test_unexpected_exception_wrapped(registry):
    bindings = stub_bindings(
        get_parties=lambda contracts: 1 / 0)
    _, report, trace = run(
        'let a = get_agreements_for(funds="F")\n'
        "let p = get_parties(contracts=a[1])\n"
        "return p", registry, bindings)
    diag = report.diagnostics[0]
    assert diag.code == "E_TOOL_FAIL"
    assert "ZeroDivisionError" in diag.message
    assert trace[-1].outcome == "E_TOOL_FAIL"


def test_runtime_type_on_bad_return(registry):
    bindings = stub_bindings(get_parties=lambda contracts: "not a list")
    _, report, trace = run(
        'let a = get_agreements_for(funds="F")\n'
        "let p = get_parties(contracts=a[1])\n"
        "return p", registry, bindings)
    assert report.diagnostics[0].code == "E_RUNTIME_TYPE"
    assert trace[-1].outcome == "E_RUNTIME_TYPE"


def test_unbound_tool_fails(registry):
    _, report, trace = run(
        'let a = get_agreements_for(funds="F")\nreturn a',
        registry, bindings={})
    assert report.diagnostics[0].code == "E_TOOL_FAIL"
    assert "no implementation" in report.diagnostics[0].message
    assert trace == []


def test_halt_keeps_partial_trace(registry):
    bindings = stub_bindings(get_parties=lambda contracts: 1 / 0)
    _, report, trace = run(
        'let a = get_agreements_for(funds="F")\n'
        "let p = get_parties(contracts=a[1])\n"
        "return p", registry, bindings)
    assert [e.tool for e in trace] == ["get_agreements_for", "get_parties"]
    assert trace[0].outcome == "ok"


# -- value helpers -----------------------------------------------------------------


def test_conforms_matrix():
    assert conforms(AGREEMENTS, parse_type("List<Pair<Str,Contract>>"))
    assert conforms("text", parse_type("Text"))
    assert conforms(CalendarDate(2005, 1, 1), parse_type("Date"))
    assert not conforms(True, parse_type("Int"))  # bools are not ints here
    assert not conforms([("a", "b"), ("c",)], parse_type("List<Pair<Str,Str>>"))
    assert conforms([], parse_type("List<Section>"))
