"""Lasso systems, their documents and the two evaluators."""

import json

import pytest

from epistemic_workbench.errors import SystemFormatError
from epistemic_workbench.logic.formula import max_agent
from epistemic_workbench.logic.parser import parse
from epistemic_workbench.systems import (
    Cell,
    LassoSystem,
    Point,
    RunTemplate,
    TruthTable,
    evaluate,
    evaluate_common,
    evaluate_common_fixpoint,
    evaluate_unrolled,
    fixture_nl_prime,
    from_lassos,
    indistinguishable,
    uis_transform,
    valid_in_system,
)
from epistemic_workbench.systems.documents import (
    dumps_system,
    load_system,
    parse_point,
    system_from_document,
    system_to_document,
)

from .sweeps import seeded_formulas, seeded_systems, sweep_sizes

FORMULAS = [
    "p",
    "K1 p",
    "(K1 p) U (K1 q)",
    "X q",
    "G F q",
    "p U q",
    "K1 F q",
    "L1 X X p",
    "C (p | F q)",
    "E ~q",
]


def clocked_pair() -> LassoSystem:
    """Two agents, clocked; agent 2 cannot tell the runs apart."""

    def cell(env, first, second, *props):
        return Cell(env, (first, second), frozenset(props))

    lassos = [
        ([cell("e0", "u", "v", "p")], [cell("e1", "u", "w"), cell("e2", "x", "w", "q")]),
        ([cell("e0", "y", "v")], [cell("e3", "y", "w", "q")]),
    ]
    return from_lassos(2, True, lassos, {"p", "q"})


def test_fixture_until_of_knowledge():
    system = fixture_nl_prime()
    start = Point(0, 0)
    assert evaluate(system, start, parse("(K1 p) U (K1 q)"))
    assert not evaluate(system, start, parse("K1 ((K1 p) U (K1 q))"))
    assert not evaluate(system, Point(1, 0), parse("(K1 p) U (K1 q)"))


def test_canonical_position_folds_into_the_loop():
    system = fixture_nl_prime()
    assert [system.canonical_position(n) for n in range(7)] == [0, 1, 2, 1, 2, 1, 2]
    with pytest.raises(ValueError):
        system.canonical_position(-1)


def test_indistinguishability_compares_cores():
    system = fixture_nl_prime()
    assert not indistinguishable(system, Point(0, 1), Point(1, 2), 1)
    assert indistinguishable(system, Point(0, 2), Point(1, 1), 1)


def test_clocked_indistinguishability_compares_times():
    system = clocked_pair()
    assert indistinguishable(system, Point(0, 0), Point(1, 0), 2)
    assert not indistinguishable(system, Point(0, 1), Point(1, 3), 2)
    assert system.local_state(Point(0, 1), 2) == (1, "w")


def test_from_lassos_unrolls_to_common_window():
    system = clocked_pair()
    assert system.prefix_len == 1
    assert system.period == 2
    assert [cell.env for cell in system.runs[1].cells] == ["e0", "e3", "e3"]
    assert system.point_label(Point(1, 2)) == "(r2,2)"


@pytest.mark.parametrize("text", FORMULAS)
def test_uis_transform_shifts_truth_by_one(text):
    f = parse(text)
    system = fixture_nl_prime()
    shifted = uis_transform(system)
    assert shifted.prefix_len == system.prefix_len + 1
    for point in system.points():
        moved = Point(point.run, point.time + 1)
        assert evaluate(system, point, f) == evaluate(shifted, moved, f)


def test_uis_transform_uses_fresh_tokens():
    shifted = uis_transform(fixture_nl_prime())
    initial = shifted.runs[0].cells[0]
    assert initial == shifted.runs[1].cells[0]
    assert initial.env == "init_e"
    assert initial.locals == ("init",)


@pytest.mark.parametrize("text", ["p", "~q", "p | F q", "K1 p | X q", "true"])
@pytest.mark.parametrize("factory", [fixture_nl_prime, clocked_pair])
def test_common_knowledge_agrees_with_fixpoint(text, factory):
    system = factory()
    f = parse(text)
    for point in system.points():
        assert evaluate_common(system, point, f) == evaluate_common_fixpoint(system, point, f)


@pytest.mark.parametrize("text", FORMULAS + ["K2 p", "K1 K2 X q", "E2 q"])
@pytest.mark.parametrize("factory", [fixture_nl_prime, clocked_pair])
def test_unrolled_evaluation_matches_table(text, factory):
    system = factory()
    f = parse(text)
    if max_agent(f) > system.agents:
        pytest.skip("formula names agent 2")
    table = TruthTable(system)
    for point in system.points():
        assert evaluate_unrolled(system, point, f) == table.value(point, f)


def test_validity_reports_first_failing_point():
    system = fixture_nl_prime()
    assert valid_in_system(system, parse("p -> K1 p")).valid
    verdict = valid_in_system(system, parse("F q"))
    assert not verdict.valid
    assert verdict.counterexample == Point(1, 0)


def test_truth_table_renders_rows_per_run():
    system = fixture_nl_prime()
    table = TruthTable(system)
    assert "010 000  q" in table.render_text(parse("p & q")).splitlines()
    document = table.to_document(parse("q"))
    assert document["runs"] == ["r1", "r2"]
    assert document["table"]["q"] == {"r1": [False, True, False], "r2": [False, False, False]}


def test_system_document_round_trip(tmp_path):
    system = clocked_pair()
    assert system_from_document(system_to_document(system)) == system
    path = tmp_path / "pair.json"
    path.write_text(dumps_system(system), encoding="utf-8")
    assert load_system(path) == system


def test_load_system_resolves_fixture_names():
    assert load_system("fixture_nl_prime") == fixture_nl_prime()


def test_load_system_reports_missing_and_invalid_files(tmp_path):
    with pytest.raises(SystemFormatError, match="no system file or fixture"):
        load_system(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    with pytest.raises(SystemFormatError, match="invalid JSON"):
        load_system(broken)


def test_document_validation():
    document = system_to_document(fixture_nl_prime())
    del document["period"]
    with pytest.raises(SystemFormatError, match="missing `period`"):
        system_from_document(document)

    document = system_to_document(fixture_nl_prime())
    document["runs"][0]["cells"][0]["val"] = {"p": True}
    with pytest.raises(SystemFormatError, match="without values"):
        system_from_document(document)

    document = system_to_document(fixture_nl_prime())
    document["m"] = True
    with pytest.raises(SystemFormatError, match="wrong type"):
        system_from_document(document)


def test_system_rejects_inconsistent_runs():
    cell = Cell("e", ("a",), frozenset())
    with pytest.raises(SystemFormatError, match="expected 2"):
        LassoSystem(1, False, 1, 1, (RunTemplate((cell,), "r1"),))
    with pytest.raises(SystemFormatError, match="unknown propositions"):
        LassoSystem(1, False, 0, 1, (RunTemplate((Cell("e", ("a",), frozenset({"z"})),), "r1"),))
    with pytest.raises(SystemFormatError, match="unique"):
        LassoSystem(1, False, 0, 1, (RunTemplate((cell,), "r1"), RunTemplate((cell,), "r1")))


def test_parse_point():
    system = fixture_nl_prime()
    assert parse_point(system, "r2, 5") == Point(1, 5)
    with pytest.raises(SystemFormatError):
        parse_point(system, "r1")
    with pytest.raises(SystemFormatError, match="no run named"):
        parse_point(system, "r9,0")
    with pytest.raises(SystemFormatError, match="non-negative"):
        parse_point(system, "r1,-1")


def test_document_is_plain_json():
    text = dumps_system(fixture_nl_prime())
    assert json.loads(text)["runs"][0]["cells"][0]["val"] == {"p": True, "q": False}


@pytest.mark.parametrize("count", sweep_sizes(300))
def test_common_knowledge_is_a_fixpoint_on_generated_systems(count):
    for index, system in seeded_systems("common", count, window=6):
        for f in seeded_formulas("common", index, 10, system.agents, depth=2, allow_common=False):
            for point in system.points():
                assert evaluate_common(system, point, f) == evaluate_common_fixpoint(system, point, f)


@pytest.mark.parametrize("count", sweep_sizes(100))
def test_uis_transform_on_generated_systems(count):
    for index, system in seeded_systems("uis", count):
        before, after = TruthTable(system), TruthTable(uis_transform(system))
        for f in seeded_formulas("uis", index, 3, system.agents):
            for point in system.points():
                assert before.value(point, f) == after.value(Point(point.run, point.time + 1), f)


@pytest.mark.parametrize("count", sweep_sizes(100))
def test_unrolled_evaluation_matches_table_on_generated_systems(count):
    for index, system in seeded_systems("unrolled", count):
        table = TruthTable(system)
        for f in seeded_formulas("unrolled", index, 10, system.agents):
            for run in range(len(system.runs)):
                # past the window, so canonical positions are exercised too
                for n in range(3 * system.window):
                    point = Point(run, n)
                    assert evaluate_unrolled(system, point, f) == table.value(point, f)
