"""Atoms, pre-models, elimination, extraction and the satisfiability procedure."""

import pytest

from epistemic_workbench.errors import ClosureLimitError, ExtractionError, UnsupportedFormulaError
from epistemic_workbench.logic.closure import basic_closure, canonical_disjunction
from epistemic_workbench.logic.formula import Know, Prop, max_agent, props_of
from epistemic_workbench.logic.parser import parse
from epistemic_workbench.properties import has_uis
from epistemic_workbench.systems import evaluate
from epistemic_workbench.tableau import (
    SAT_CLASSES,
    acceptable_extension,
    atoms_of,
    bounded_model_search,
    build_premodel,
    decide_sat,
    eliminate,
    is_acceptable,
    locally_consistent,
    premodel_to_document,
    render_premodel,
)
from epistemic_workbench.tableau.premodel import current_information, phi_formulas, premodel_depth

SATISFIABLE = ["p", "p U q", "K1 p & L1 ~q", "F p & X ~p", "K1 X p", "G F p & G F ~p"]
EVERY_CLASS = SATISFIABLE[:3]
UNSATISFIABLE = ["p & ~p", "K1 p & ~p", "F p & G ~p", "X p & X ~p", "K1 (p & ~p)"]


@pytest.mark.parametrize("text,count", [("p", 2), ("K1 p", 3), ("p U q", 5)])
def test_atom_counts(text, count):
    atoms = atoms_of(basic_closure(parse(text)))
    assert len(atoms) == count
    for atom in atoms:
        assert locally_consistent(atom.members, atom.closure)


def test_atoms_respect_common_knowledge_rules():
    closure = basic_closure(parse("C p"), agents=2)
    for atom in atoms_of(closure):
        if parse("C p") in atom:
            assert parse("p") in atom
            assert parse("E C p") in atom
            assert parse("K1 C p") in atom


def test_flat_premodel_layout():
    pm = build_premodel(parse("K1 p"), flat=True)
    assert pm.depth == 1
    assert len(pm.states) == 6
    assert [s.index for s in pm.states] == [()] * 3 + [(1,)] * 3
    # the epsilon-state and the 1-state that both know p share their information
    assert pm.related(2, 5, 1)
    assert not pm.related(2, 1, 1)
    assert pm.information_token(2, 1) == pm.information_token(5, 1)
    assert pm.information_token(0, 1).startswith("o1.")


def test_current_information_and_phi_formulas():
    pm = build_premodel(parse("K1 p"), flat=True)
    assert current_information(pm.state(2), 1) == ((1,), frozenset({Prop("p")}))
    assert current_information(pm.state(5), 1) == current_information(pm.state(2), 1)
    assert current_information(pm.state(0), 1) == ((1,), frozenset())
    knows = pm.state(2).atom.formula()
    assert phi_formulas(pm, pm.state(2), 1) == knows
    assert phi_formulas(pm, pm.state(2), 1, plus=True) == pm.state(5).atom.formula()
    expected = canonical_disjunction([pm.state(0).atom.formula(), pm.state(1).atom.formula()])
    assert phi_formulas(pm, pm.state(0), 1) == expected


def test_premodel_depth_rules():
    assert premodel_depth(parse("K1 ~K2 p")) == 2
    assert premodel_depth(parse("C p")) == 0
    assert premodel_depth(parse("K1 p"), 3) == 3
    with pytest.raises(UnsupportedFormulaError):
        premodel_depth(parse("C p"), 1)


def test_premodel_respects_closure_cap():
    with pytest.raises(ClosureLimitError):
        build_premodel(parse("K1 (p & q)"), cap=100)


def test_elimination_keeps_realisable_states():
    pm = eliminate(build_premodel(parse("K1 p"), flat=True))
    assert pm.alive == frozenset(range(6))
    assert pm.rounds == ()


def test_elimination_removes_states_without_successors():
    pm = eliminate(build_premodel(parse("X p & X ~p")))
    assert pm.rounds
    assert not [s for s in pm.states if s.id in pm.alive and s.holds(pm.psi)]


def test_premodel_reports():
    pm = eliminate(build_premodel(parse("K1 p"), flat=True))
    assert render_premodel(pm).splitlines()[0] == "pre-model for K1 p (depth 1, 6/6 alive)"
    document = premodel_to_document(pm)
    assert document["depth"] == 1
    assert len(document["states"]) == 6
    assert set(document["classes"]) == {"1"}


@pytest.mark.parametrize("text", ["p U q", "G F p & G F ~p", "F q & K1 p"])
def test_acceptable_extensions_fulfil_every_until(text):
    pm = eliminate(build_premodel(parse(text), depth=0))
    for s in sorted(pm.alive):
        lasso = acceptable_extension(pm, (s,))
        assert lasso.prefix(1) == (s,)
        assert is_acceptable(pm, lasso)


def test_acceptable_extension_rejects_bad_prefixes():
    pm = eliminate(build_premodel(parse("X p & X ~p")))
    with pytest.raises(ExtractionError):
        acceptable_extension(pm, ())
    dead = min(set(range(len(pm.states))) - pm.alive)
    with pytest.raises(ExtractionError, match="eliminated"):
        acceptable_extension(pm, (dead,))


@pytest.mark.parametrize("klass", SAT_CLASSES)
@pytest.mark.parametrize("text", EVERY_CLASS)
def test_satisfiable_formulas_get_checked_models(text, klass):
    psi = parse(text)
    result = decide_sat(psi, klass)
    assert result.satisfiable
    assert result.verdict == "SAT"
    assert evaluate(result.system, result.point, psi)
    if klass in ("uis", "sync_uis"):
        assert has_uis(result.system)
        assert result.point.time == 1
    assert result.system.clocked == (klass in ("sync", "sync_uis"))


@pytest.mark.parametrize("text", SATISFIABLE[3:])
def test_temporal_formulas_get_unclocked_models(text):
    psi = parse(text)
    result = decide_sat(psi)
    assert result.satisfiable
    assert evaluate(result.system, result.point, psi)
    assert "SAT: " in result.render_text()


@pytest.mark.parametrize("text", UNSATISFIABLE)
def test_unsatisfiable_formulas(text):
    result = decide_sat(parse(text))
    assert not result.satisfiable
    assert result.system is None
    assert result.render_text().startswith("UNSAT: ")


@pytest.mark.parametrize("text", ["C p & ~p", "E p & ~K2 p", "C (p & q) & ~K1 q"])
def test_common_knowledge_unsatisfiable(text):
    assert not decide_sat(parse(text)).satisfiable


@pytest.mark.parametrize("text", ["C p", "E p & ~C p & L2 q", "K1 p & ~K2 p"])
def test_common_knowledge_satisfiable(text):
    psi = parse(text)
    result = decide_sat(psi)
    assert result.satisfiable
    assert evaluate(result.system, result.point, psi)


def test_sat_result_document():
    result = decide_sat(parse("p U q"), "uis")
    document = result.to_document()
    assert document["verdict"] == "SAT"
    assert document["class"] == "uis"
    assert document["point"] == ["r1", 1]
    assert document["system"]["m"] == 1


def test_decide_sat_rejects_unknown_class():
    with pytest.raises(ValueError, match="class must be one of"):
        decide_sat(parse("p"), "pr")


@pytest.mark.parametrize("text", SATISFIABLE[:4])
def test_bounded_search_finds_small_models(text):
    psi = parse(text)
    outcome = bounded_model_search(psi)
    assert outcome.found
    assert evaluate(outcome.system, outcome.point, psi)


@pytest.mark.parametrize("text", UNSATISFIABLE[:3])
def test_bounded_search_agrees_on_unsatisfiable_formulas(text):
    outcome = bounded_model_search(parse(text), window=2)
    assert not outcome.found
    assert outcome.complete


def test_bounded_search_covers_two_agents_completely():
    outcome = bounded_model_search(parse("K1 p & K2 q & ~p"), runs=2, window=3, agents=2)
    assert not outcome.found
    assert not outcome.truncated
    assert outcome.complete
    assert outcome.render_text().startswith("bounded search: no model among")


def test_bounded_search_finds_clocked_models():
    psi = parse("K1 X p & ~X K1 p")
    outcome = bounded_model_search(psi, clocked=True)
    assert outcome.found
    assert outcome.system.clocked
    assert evaluate(outcome.system, outcome.point, psi)


def test_bounded_search_budget():
    outcome = bounded_model_search(parse("p & ~p"), budget=1)
    assert outcome.truncated
    assert not outcome.complete
    assert outcome.examined == 1
    assert "inconclusive" in outcome.render_text()


ORACLE_SAT = SATISFIABLE + [
    "~K1 p & ~K1 ~p",
    "K1 p & ~K2 p",
    "E p & ~C p & L2 q",
    "C p",
    "K1 X p & ~X K1 p",
    "X K1 p & ~K1 X p",
    "K1 F q & ~F K1 q",
    "L1 q & ~q",
    "K2 (p | q) & ~K2 p & ~K2 q",
    "(p U q) & ~q",
    "G p & F q",
    "F G p & G F ~q",
    "X X p & ~X p",
    "K1 K2 p & ~K2 K1 p",
    "L1 L2 ~p & p",
    "E q & ~K1 K2 q",
    "p & X ~p & X X p",
    "~C ~p & ~p",
    "K1 (p U q) & ~q",
    "G (p -> X ~p)",
]
ORACLE_UNSAT = UNSATISFIABLE + [
    "K1 p & K2 q & ~p",
    "K1 p & ~K1 K1 p",
    "~K1 p & ~K1 ~K1 p",
    "K1 (p & q) & ~K1 p",
    "K1 p & K1 ~p",
    "X p & ~X p",
    "(p U q) & G ~q",
    "G p & F ~p",
    "K1 G p & F ~p",
    "G K1 p & ~p",
    "K2 X q & X ~q",
    "K1 K2 p & ~p",
    "K1 ~K2 p & K2 p",
    "E p & ~K2 p",
    "C p & ~K1 p",
    "C p & ~E p",
    "E p & ~C p",
    "(p U q) & ~q & ~p",
    "K1 F p & G ~p",
]
ORACLE = [(text, True) for text in ORACLE_SAT] + [(text, False) for text in ORACLE_UNSAT]


def check_against_oracle(text, satisfiable):
    psi = parse(text)
    result = decide_sat(psi)
    assert result.satisfiable == satisfiable
    if satisfiable:
        assert evaluate(result.system, result.point, psi)
    else:
        outcome = bounded_model_search(psi, runs=2, window=3)
        assert outcome.complete, outcome.render_text()


def test_oracle_corpus_shape():
    assert len(ORACLE) == 50
    assert len(set(ORACLE_SAT) | set(ORACLE_UNSAT)) == 50
    for text, _ in ORACLE:
        assert max_agent(parse(text)) <= 2
        assert props_of(parse(text)) <= {"p", "q"}


@pytest.mark.parametrize("text,satisfiable", ORACLE[::5])
def test_tableau_agrees_with_model_search(text, satisfiable):
    check_against_oracle(text, satisfiable)


@pytest.mark.acceptance
@pytest.mark.parametrize("text,satisfiable", ORACLE)
def test_tableau_agrees_with_model_search_on_full_corpus(text, satisfiable):
    check_against_oracle(text, satisfiable)


@pytest.mark.parametrize("text", ORACLE_SAT[:6] + ["K1 p & ~K2 p", "E p & ~C p & L2 q"])
def test_phi_formulas_characterise_information(text):
    result = decide_sat(parse(text))
    pm, system = result.premodel, result.system
    labels = {}
    for point in system.points():
        labels.setdefault(system.cell(point.run, point.time).env, []).append(point)
    for s in pm.states_at((), alive_only=True):
        for agent in range(1, pm.agents + 1):
            phi = phi_formulas(pm, s, agent)
            for t in pm.states_at(()):
                if pm.related(s.id, t.id, agent):
                    assert phi_formulas(pm, t, agent) == phi
            for point in labels.get(f"s{s.id}", []):
                assert evaluate(system, point, Know(agent, phi))
