"""Hallucination tier: call sites checked against the registry, statically."""

import pytest

from lawflow.plan.parser import parse_plan
from lawflow.plan.registry import default_registry
from lawflow.plan.types import parse_type, unifies
from lawflow.plan.validate import check_tools, parse_report, suggest_name


@pytest.fixture(scope="module")
def registry():
    return default_registry()


def check(source, registry):
    return check_tools(parse_plan(source), registry)


def codes(report):
    return [d.code for d in report.diagnostics]


def test_clean_plan_passes(registry):
    report = check(
        'let a = get_agreements_for(funds="F")\n'
        'let d = get_dates(contracts=a[1], kind="master")\n'
        "return d", registry)
    assert report.passed and report.tier == "hallucination"
    assert report.diagnostics == []


def test_parse_report_success_and_failure():
    program, report = parse_report("return 1")
    assert program is not None and report.passed and report.tier == "syntax"
    program, report = parse_report("let = 3")
    assert program is None and not report.passed
    assert codes(report) == ["E_PARSE"]
    assert report.diagnostics[0].locus.startswith("line 1")


def test_unknown_tool_with_suggestion(registry):
    report = check('let a = get_agrements_for(funds="F")\nreturn a', registry)
    assert codes(report) == ["E_UNKNOWN_TOOL"]
    diag = report.diagnostics[0]
    assert diag.suggestion == "get_agreements_for"
    assert "did you mean 'get_agreements_for'" in diag.message
    assert diag.locus == "line 1, column 9"


def test_unknown_tool_far_name_no_suggestion(registry):
    report = check("let a = frobnicate_everything(x=1)\nreturn a", registry)
    diag = report.diagnostics[0]
    assert diag.code == "E_UNKNOWN_TOOL"
    assert diag.suggestion is None
    assert "did you mean" not in diag.message


def test_suggest_name_distance_cutoff():
    names = ["get_dates", "get_master"]
    assert suggest_name("get_datez", names) == "get_dates"  # distance 1
    assert suggest_name("completely_off", names) is None
    # ties resolve to the sorted-first candidate
    assert suggest_name("get_da", ["get_db", "get_dc"]) == "get_db"


def test_bad_kwarg_with_suggestion(registry):
    report = check('let a = get_agreements_for(fund="F")\nreturn a', registry)
    assert "E_BAD_KWARG" in codes(report)
    diag = next(d for d in report.diagnostics if d.code == "E_BAD_KWARG")
    assert diag.suggestion == "funds"


def test_duplicate_kwarg(registry):
    report = check(
        'let a = get_agreements_for(funds="F", funds="G")\nreturn a', registry)
    assert codes(report) == ["E_BAD_KWARG"]
    assert "duplicate" in report.diagnostics[0].message


def test_missing_required_arity(registry):
    report = check(
        'let a = get_agreements_for(funds="F")\n'
        "let d = get_dates(contracts=a[1])\n"
        "return d", registry)
    assert codes(report) == ["E_BAD_ARITY"]
    assert "kind" in report.diagnostics[0].message


def test_all_optional_needs_at_least_one(registry):
    report = check("let a = get_agreements_for()\nreturn a", registry)
    assert codes(report) == ["E_BAD_ARITY"]
    assert "at least one" in report.diagnostics[0].message


def test_kwarg_type_mismatch(registry):
    report = check("let a = get_agreements_for(funds=7)\nreturn a", registry)
    assert codes(report) == ["E_TYPE_MISMATCH"]
    assert "expects funds: Str, got Int" in report.diagnostics[0].message


def test_list_argument_type_mismatch(registry):
    # agreements itself is List<Pair<Str,Contract>>, not List<Contract>
    report = check(
        'let a = get_agreements_for(funds="F")\n'
        'let d = get_dates(contracts=a, kind="master")\n'
        "return d", registry)
    assert codes(report) == ["E_TYPE_MISMATCH"]


def test_pair_projection_typing(registry):
    # a[1] : List<Contract>, a[0] : List<Str>; both legal, index 2 is not
    ok = check(
        'let a = get_agreements_for(funds="F")\n'
        "let ids = a[0]\nlet cs = a[1]\n"
        'let d = get_dates(contracts=cs, kind="effective")\n'
        "return d", registry)
    assert ok.passed
    bad = check(
        'let a = get_agreements_for(funds="F")\nlet x = a[2]\nreturn x',
        registry)
    assert codes(bad) == ["E_TYPE_MISMATCH"]
    assert "0 or 1" in bad.diagnostics[0].message


def test_index_into_scalar_rejected(registry):
    report = check('let s = "abc"\nlet x = s[0]\nreturn x', registry)
    assert codes(report) == ["E_TYPE_MISMATCH"]
    assert "cannot index" in report.diagnostics[0].message


def test_sample_typing(registry):
    ok = check(
        'let a = get_agreements_for(funds="F")\n'
        'let s = get_section_v2(agg_list=a[1], section_name="termination")\n'
        "let p = sample(s, 4)\n"
        "let out = get_summary_v1(text_list=p)\n"
        "return out", registry)
    assert ok.passed
    bad = check("let p = sample(3, 2)\nreturn p", registry)
    assert codes(bad) == ["E_TYPE_MISMATCH"]
    assert "needs a list" in bad.diagnostics[0].message


def test_sample_k_must_be_positive(registry):
    report = check(
        'let a = get_agreements_for(funds="F")\nlet p = sample(a, 0)\nreturn p',
        registry)
    assert codes(report) == ["E_TYPE_MISMATCH"]
    assert "at least 1" in report.diagnostics[0].message


def test_empty_cond_needs_list_or_text(registry):
    report = check(
        "let n = 5\nif empty(n) { return 1 } else { return 2 }", registry)
    assert codes(report) == ["E_TYPE_MISMATCH"]
    assert "empty()" in report.diagnostics[0].message


def test_summary_text_unifies_with_str(registry):
    # get_summary_v1 returns Text; feeding it where Str flows is fine
    report = check(
        'let a = get_agreements_for(funds="F")\n'
        'let s = get_section_v2(agg_list=a[1], section_name="fee schedule")\n'
        "let out = get_summary_v1(text_list=s)\n"
        "if empty(out) { return \"none\" } else { return out }", registry)
    assert report.passed


def test_no_cascade_after_failed_subtree(registry):
    # the unknown tool fires once; downstream uses of its result stay quiet
    report = check(
        "let a = mystery_tool(x=1)\n"
        'let d = get_dates(contracts=a[1], kind="master")\n'
        "return d", registry)
    assert codes(report) == ["E_UNKNOWN_TOOL"]


def test_multiple_diagnostics_collected(registry):
    report = check(
        'let a = get_agrements_for(funds="F")\n'
        'let d = get_dates(kind=7)\n'
        "return d", registry)
    got = codes(report)
    assert "E_UNKNOWN_TOOL" in got
    assert "E_TYPE_MISMATCH" in got
    assert "E_BAD_ARITY" in got


def test_report_to_dict_shape(registry):
    report = check("let a = nope(x=1)\nreturn a", registry)
    payload = report.to_dict()
    assert payload["tier"] == "hallucination"
    assert payload["passed"] is False
    assert payload["diagnostics"][0]["code"] == "E_UNKNOWN_TOOL"
    assert "locus" in payload["diagnostics"][0]


def test_type_parser_and_unification():
    t = parse_type("List<Pair<Str,Contract>>")
    assert str(t) == "List<Pair<Str,Contract>>"
    assert unifies(parse_type("Str"), parse_type("Text"))
    assert unifies(parse_type("List<Text>"), parse_type("List<Str>"))
    assert not unifies(parse_type("List<Str>"), parse_type("List<Int>"))
    with pytest.raises(ValueError):
        parse_type("Stack<Str>")
    with pytest.raises(ValueError):
        parse_type("Pair<Str>")
