"""Command-line verbs, exit codes and report formats."""

import json

import pytest

from epistemic_workbench.cli import main
from epistemic_workbench.proofs import load_proof
from epistemic_workbench.properties import classify
from epistemic_workbench.systems import fixture_nl_prime
from epistemic_workbench.systems.documents import load_system


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ("EPISTEMIC_CLOSURE_CAP", "EPISTEMIC_EXHAUSTIVE_LIMIT", "EPISTEMIC_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eval_prints_truth_value(capsys):
    code, out, _ = run(
        capsys, "eval", "--system", "fixture_nl_prime", "--point", "r1,0", "--formula", "(K1 p) U (K1 q)"
    )
    assert code == 0
    assert out.strip().endswith("at (r1,0): true")


def test_eval_with_table_and_document(capsys):
    code, out, _ = run(
        capsys, "--format", "doc", "eval", "--system", "fixture_nl_prime", "--point", "r2,0", "--formula", "q", "--table"
    )
    assert code == 0
    document = json.loads(out)
    assert document["value"] is False
    assert document["table"]["runs"] == ["r1", "r2"]


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--system", "fixture_nl_prime")
    assert code == 0
    assert out.splitlines()[0] == "classes: uis"


def test_prove_builtin_derivation(capsys):
    code, out, _ = run(capsys, "prove", "--proof", "kt1_from_kt3")
    assert code == 0
    assert out.startswith("proof accepted")


def test_prove_reports_rejection(capsys, tmp_path):
    path = tmp_path / "bad.proof"
    path.write_text('SYSTEM: S5U\n1. "p -> q" BY AXIOM K1\n', encoding="utf-8")
    code, out, _ = run(capsys, "prove", "--proof", str(path))
    assert code == 1
    assert "bad-match" in out


def test_fixtures_writes_systems_and_proof(capsys, tmp_path):
    code, out, _ = run(capsys, "fixtures", "--out-dir", str(tmp_path))
    assert code == 0
    assert len(out.splitlines()) == 3
    assert load_system(tmp_path / "fixture_nl_prime.json") == fixture_nl_prime()
    assert load_proof(tmp_path / "kt1_from_kt3.proof").axiom_set == "S5U+KT3"


def test_gen_writes_a_loadable_system(capsys, tmp_path):
    target = tmp_path / "gen.json"
    code, out, _ = run(capsys, "gen", "--seed", "7", "--class", "pr", "--out", str(target))
    assert code == 0
    assert out.strip() == f"wrote {target}"
    assert "pr" in classify(load_system(target))


def test_gen_is_deterministic(capsys):
    _, first, _ = run(capsys, "gen", "--seed", "3")
    _, second, _ = run(capsys, "gen", "--seed", "3")
    assert first == second
    assert json.loads(first)["m"] == 1


def test_sat_with_corroboration(capsys):
    code, out, _ = run(capsys, "sat", "--formula", "p & ~p", "--corroborate")
    assert code == 0
    assert out.startswith("UNSAT:")
    assert "bounded search: no model among" in out


def test_sat_corroboration_covers_two_agents(capsys):
    code, out, _ = run(capsys, "--format", "doc", "sat", "--formula", "K1 p & K2 q & ~p", "--corroborate")
    assert code == 0
    document = json.loads(out)
    assert document["verdict"] == "UNSAT"
    assert document["corroboration"]["complete"] is True
    assert document["corroboration"]["truncated"] is False


def test_sat_corroboration_reports_truncation(capsys, monkeypatch):
    monkeypatch.setenv("EPISTEMIC_EXHAUSTIVE_LIMIT", "1")
    code, out, _ = run(capsys, "sat", "--formula", "K1 p & ~p", "--corroborate")
    assert code == 0
    assert "inconclusive, budget ran out after 2 candidates" in out
    assert "no model among" not in out


def test_sat_writes_model(capsys, tmp_path):
    model = tmp_path / "model.json"
    code, out, _ = run(capsys, "--format", "doc", "sat", "--formula", "p U q", "--class", "sync", "--model", str(model))
    assert code == 0
    assert json.loads(out)["verdict"] == "SAT"
    assert load_system(model).clocked


def test_axioms_writes_csv(capsys, tmp_path):
    csv_path = tmp_path / "kt4.csv"
    code, out, _ = run(
        capsys,
        "axioms",
        "--class",
        "nl",
        "--schemas",
        "KT4",
        "--trials",
        "2",
        "--instances",
        "3",
        "--seed",
        "1",
        "--csv",
        str(csv_path),
    )
    assert code == 0
    assert out.strip().endswith("total violations: 0")
    assert len(csv_path.read_text(encoding="utf-8").splitlines()) == 3


def test_tree_search_check_and_formula(capsys, tmp_path):
    trees = tmp_path / "trees.json"
    code, out, _ = run(capsys, "trees", "search", "--formula", "K1 p", "--out", str(trees))
    assert code == 0
    assert out.strip().splitlines()[-1] == "complete"
    code, out, _ = run(capsys, "trees", "check", "--formula", "K1 p", "--file", str(trees))
    assert code == 0
    assert out.startswith("1 trees, 0 steps: ok")
    state = json.loads(trees.read_text(encoding="utf-8"))["trees"][0][-1]
    code, out, _ = run(capsys, "trees", "formula", "--formula", "K1 p", "--file", str(trees), "--state", str(state))
    assert code == 0
    assert "L1" in out


def test_tree_check_flags_broken_trees(capsys, tmp_path):
    trees = tmp_path / "broken.json"
    trees.write_text(json.dumps({"depth": 1, "trees": [[2]], "steps": []}), encoding="utf-8")
    code, out, _ = run(capsys, "trees", "check", "--formula", "K1 p", "--file", str(trees))
    assert code == 1
    assert "upward-closure" in out


def test_trees_derive(capsys):
    code, out, _ = run(capsys, "trees", "derive", "--formula", "K1 p", "--kind", "nl")
    assert code == 0
    # one run per state of the single tree {s2, s5}
    assert out.startswith("derived 2 nl runs")


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "--system", "fixture_nl_prime", "--point", "r9,0", "--formula", "p"],
        ["eval", "--system", "nowhere.json", "--point", "r1,0", "--formula", "p"],
        ["eval", "--system", "fixture_nl_prime", "--point", "r1,0", "--formula", "p &"],
        ["sat", "--formula", "K1 p", "--class", "pr"],
        ["gen", "--seed", "1", "--class", "nl_prime"],
    ],
)
def test_bad_input_exits_with_usage_code(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_missing_arguments(capsys):
    assert main(["eval", "--system", "fixture_nl_prime"]) == 2
    assert main([]) == 2
    capsys.readouterr()


def test_bad_settings_are_reported(capsys, monkeypatch):
    monkeypatch.setenv("EPISTEMIC_CLOSURE_CAP", "lots")
    code, _, err = run(capsys, "classify", "--system", "fixture_nl_prime")
    assert code == 2
    assert "EPISTEMIC_CLOSURE_CAP" in err
