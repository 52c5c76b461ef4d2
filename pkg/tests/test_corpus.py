import pytest

from qloops.corpus import PROVENANCE_TAGS, check_oracle, load_cases, run_case, run_corpus

CASES = load_cases()


def test_corpus_is_populated():
    names = {c.name for c in CASES}
    assert len(CASES) >= 20
    assert {"identity2", "divergent_diag", "divergent_upper", "q_half", "f2"} <= names


@pytest.mark.parametrize("case", CASES, ids=[c.name for c in CASES])
def test_case_layout(case):
    assert case.provenance in PROVENANCE_TAGS
    assert case.inputs and (case.path / "PROVENANCE.md").is_file()
    assert f"[{case.provenance}]" in (case.path / "PROVENANCE.md").read_text()
    if case.provenance == "DERIVED":
        assert (case.path / "oracle.py").is_file()


@pytest.mark.parametrize("case", CASES, ids=[c.name for c in CASES])
def test_case_runs(case):
    r = run_case(case)
    assert r["pass"], r["detail"]


@pytest.mark.parametrize("case", [c for c in CASES if c.provenance == "DERIVED"],
                         ids=[c.name for c in CASES if c.provenance == "DERIVED"])
def test_oracle_reproduces_frozen_value(case):
    assert check_oracle(case) == []


def test_run_corpus_reports_failures(tmp_path):
    import json

    d = tmp_path / "broken"
    d.mkdir()
    (d / "input.json").write_text("{}")
    (d / "expected.json").write_text(json.dumps({"provenance": "TRIVIAL",
                                                 "command": ["classify", "input.json"],
                                                 "expect": {"rank": 1}}))
    rep = run_corpus(tmp_path)
    assert len(rep) == 1 and not rep[0]["pass"]
