"""Class checkers, concordance and canonical sequence descriptors."""

import pytest

from epistemic_workbench.properties import (
    Lasso,
    PointSequence,
    classify,
    classify_report,
    concordant,
    concordant_sequences,
    future_local_sequence,
    has_no_learning,
    has_no_learning_prime,
    has_perfect_recall,
    has_uis,
    is_synchronous,
    local_state_sequence,
)
from epistemic_workbench.properties.checkers import NL_MODES, PR_MODES, check_sync_recall_step, default_horizon
from epistemic_workbench.properties.sequences import canonical_absorbed_lasso, canonical_lasso
from epistemic_workbench.systems import Cell, Point, fixture_nl_prime, from_lassos
from epistemic_workbench.systems.fixtures import fixture_nl_prime_witness

from .sweeps import seeded_systems, sweep_sizes


def single_agent(clocked, *runs, envs=None):
    """Build a one-agent system from (head cores, loop cores) strings."""
    lassos = []
    for index, (head, loop) in enumerate(runs):
        env = envs[index] if envs else "e"
        lassos.append(([Cell(env, (c,)) for c in head], [Cell(env, (c,)) for c in loop]))
    return from_lassos(1, clocked, lassos, set())


def recalling():
    return single_agent(False, ("a", "b"), ("a", "c"))


def forgetful_future():
    return single_agent(False, ("a", "b"), ("a", "b"), envs=["e1", "e2"])


def test_fixture_classification():
    assert classify(fixture_nl_prime()) == frozenset({"uis"})
    assert classify(fixture_nl_prime_witness()) == frozenset({"uis", "nl_prime"})


def test_witness_separates_no_learning_from_its_variant():
    system = fixture_nl_prime_witness()
    assert has_no_learning_prime(system, 1)
    report = has_no_learning(system, 1)
    assert not report
    assert report.counterexample.clause == "nl.future"


@pytest.mark.parametrize("mode", PR_MODES)
def test_perfect_recall_modes_agree_on_recalling_system(mode):
    assert has_perfect_recall(recalling(), 1, mode=mode)


@pytest.mark.parametrize("mode", PR_MODES)
def test_perfect_recall_modes_agree_on_fixture(mode):
    report = has_perfect_recall(fixture_nl_prime(), 1, mode=mode)
    assert not report
    assert report.horizon == 9
    assert report.counterexample is not None


@pytest.mark.parametrize("mode", NL_MODES)
def test_no_learning_modes_agree(mode):
    assert has_no_learning(forgetful_future(), 1, mode=mode)
    assert not has_no_learning(fixture_nl_prime(), 1, mode=mode)


def test_unknown_modes_are_rejected():
    with pytest.raises(ValueError):
        has_perfect_recall(recalling(), 1, mode="z")
    with pytest.raises(ValueError):
        has_no_learning(recalling(), 1, mode="d")


def test_classification_of_small_systems():
    assert classify(recalling()) == frozenset({"pr", "uis"})
    assert classify(forgetful_future()) == frozenset({"pr", "nl", "nl_prime"})


def test_history_counterexample_is_reported():
    report = has_perfect_recall(fixture_nl_prime(), 1)
    system = fixture_nl_prime()
    text = report.render_text(system)
    assert text.startswith("pr[agent 1] mode=definition: no (horizon 9)")
    assert "pr.history fails at" in text
    document = report.to_document()
    assert document["verdict"] is False
    assert document["counterexample"]["clause"] == "pr.history"


def test_synchrony_and_uis():
    assert not is_synchronous(fixture_nl_prime())
    assert is_synchronous(single_agent(True, ("u", "v"), ("x", "v")))
    assert has_uis(fixture_nl_prime())
    report = has_uis(forgetful_future())
    assert report.counterexample.second == Point(1, 0)


def test_clocked_step_back_check():
    system = single_agent(True, ("u", "v"), ("x", "v"))
    report = check_sync_recall_step(system, 1)
    assert not report
    assert report.counterexample.first.time == 1
    assert not has_perfect_recall(system, 1)
    assert check_sync_recall_step(single_agent(True, ("u", "v"), ("u", "v")), 1)


def test_classify_report_lists_every_check():
    classification = classify_report(fixture_nl_prime())
    names = [report.property for report in classification.reports]
    assert names == ["pr", "nl", "nl_prime", "sync", "uis"]
    assert classification.render_text().splitlines()[0] == "classes: uis"
    assert classification.to_document()["classes"] == ["uis"]


def test_default_horizon_scales_window():
    assert default_horizon(fixture_nl_prime()) == 9
    assert default_horizon(fixture_nl_prime(), 5) == 15


def test_checkers_share_the_default_horizon():
    system = fixture_nl_prime()
    assert has_perfect_recall(system, 1).horizon == 9
    assert has_no_learning(system, 1).horizon == 9
    assert has_no_learning_prime(system, 1).horizon == 9
    assert has_no_learning(system, 1, horizon=20).horizon == 20
    assert has_no_learning_prime(system, 1, horizon=2).horizon == 3


def equal(x, y):
    return x == y


def test_concordant_finite_sequences():
    result = concordant_sequences([1, 1, 2], [1, 2, 2], equal)
    assert result
    assert result.witness.s_intervals == ((0, 2), (2, 3))
    assert result.witness.t_intervals == ((0, 1), (1, 3))
    assert not concordant_sequences([1, 2], [2, 1], equal)
    assert not concordant_sequences([1, 2], [1], equal)
    with pytest.raises(ValueError):
        concordant_sequences([], [1], equal)


def test_concordant_infinite_point_sequences():
    system = forgetful_future()
    result = concordant(system, PointSequence(0, 0), PointSequence(1, 0), 1)
    assert result
    assert result.witness.s_intervals == ((0, 1), (1, None))
    assert not concordant(fixture_nl_prime(), PointSequence(0, 0), PointSequence(1, 0), 1)


def test_concordant_finite_point_sequences():
    system = recalling()
    assert concordant(system, PointSequence(0, 0, 3), PointSequence(0, 0, 1), 1)
    assert not concordant(system, PointSequence(0, 0, 1), PointSequence(1, 0, 1), 1)


def test_lasso_rendering_and_prefix():
    assert str(Lasso(("a",), ("b", "c"))) == "<a(b c)w>"
    assert str(Lasso((), ("b",))) == "<(b)w>"
    assert str(Lasso(("a", "b"))) == "<a b>"
    assert Lasso((1,), (2, 3)).prefix(5) == (1, 2, 3, 2, 3)
    assert Lasso((1, 2)).prefix(5) == (1, 2)


def test_canonical_lassos():
    assert canonical_lasso(["a", "b"], ["a", "b"]) == Lasso((), ("a", "b"))
    assert canonical_lasso([], ["x", "x"]) == Lasso((), ("x",))
    assert canonical_absorbed_lasso(["a", "a"], ["b", "b", "c"]) == Lasso(("a",), ("b", "c"))
    assert canonical_absorbed_lasso(["a", "a", "b"], []) == Lasso(("a", "b"))


def test_local_state_sequences():
    system = fixture_nl_prime()
    assert local_state_sequence(system, 0, 1, 4) == ("a", "b", "c", "b", "c")
    assert local_state_sequence(recalling(), 0, 1, 3) == ("a", "b")
    assert future_local_sequence(system, 0, 1, 0) == Lasso(("a",), ("b", "c"))
    assert future_local_sequence(system, 0, 1, 2) == Lasso((), ("c", "b"))
    clocked = single_agent(True, ("u", "v"), ("x", "v"))
    assert local_state_sequence(clocked, 0, 1, 2) == ((0, "u"), (1, "v"), (2, "v"))


@pytest.mark.parametrize("count", sweep_sizes(300))
def test_checker_modes_agree_on_generated_systems(count):
    for _, system in seeded_systems("modes", count):
        longer = 2 * default_horizon(system)
        for agent in range(1, system.agents + 1):
            recall = {mode: bool(has_perfect_recall(system, agent, mode=mode)) for mode in PR_MODES}
            assert len(set(recall.values())) == 1, recall
            learning = {mode: bool(has_no_learning(system, agent, mode=mode)) for mode in NL_MODES}
            assert len(set(learning.values())) == 1, learning
            assert bool(has_perfect_recall(system, agent, horizon=longer)) == recall["definition"]
            assert bool(has_no_learning(system, agent, horizon=longer)) == learning["definition"]


@pytest.mark.parametrize("count", sweep_sizes(300))
def test_no_learning_implies_its_variant_on_generated_systems(count):
    for _, system in seeded_systems("nl-variant", count):
        for agent in range(1, system.agents + 1):
            nl = bool(has_no_learning(system, agent))
            nl_prime = bool(has_no_learning_prime(system, agent))
            if nl:
                assert nl_prime
            if system.clocked or has_perfect_recall(system, agent):
                assert nl == nl_prime
