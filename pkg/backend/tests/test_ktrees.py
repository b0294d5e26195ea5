import random

import pytest

from epistemic_workbench.axioms.generator import seed_for
from epistemic_workbench.axioms.random_formulas import FormulaBounds, random_formula
from epistemic_workbench.errors import SearchBudgetExceeded, SequenceError
from epistemic_workbench.ktrees import (
    KTree,
    TreeStep,
    check_step_chain,
    check_tree_step,
    compression,
    compression_lasso,
    derive_run,
    derived_system,
    fusion,
    grow_tree,
    is_ktree,
    search_tree_sequence,
    tree_formula,
)
from epistemic_workbench.logic.formula import And, possible
from epistemic_workbench.logic.parser import parse
from epistemic_workbench.properties import Lasso, has_no_learning, has_perfect_recall, is_synchronous
from epistemic_workbench.tableau import acceptable_extension, build_premodel, eliminate

from .sweeps import sweep_sizes


def knows_p():
    """Flat K1 p pre-model: s0..s2 at the root level, s3..s5 one level down; s2 and s5 know p."""
    return eliminate(build_premodel(parse("K1 p"), flat=True))


def step(a, b):
    return b == a + 1


def test_grow_tree_collects_upward_partners():
    pm = knows_p()
    tree = grow_tree(pm, 2, 1)
    assert tree.states == frozenset({2, 5})
    assert is_ktree(pm, tree.states, 1)


@pytest.mark.parametrize(
    "states,k,clause",
    [
        ({1, 2, 5}, 1, "unique-root"),
        ({2}, 1, "upward-closure"),
        ({2, 3, 4, 5}, 1, "downward-witness"),
        ({2, 5}, 0, "depth"),
    ],
)
def test_tree_conditions(states, k, clause):
    verdict = is_ktree(knows_p(), states, k)
    assert not verdict
    assert verdict.clause == clause


def test_grow_tree_needs_epsilon_root():
    with pytest.raises(ValueError):
        grow_tree(knows_p(), 5, 1)


def test_tree_formula_mentions_parent_possibility():
    pm = knows_p()
    tree = KTree(frozenset({2, 5}), 1)
    expected = And(pm.state(5).atom.formula(), possible(1, pm.state(2).atom.formula()))
    assert tree_formula(pm, tree, 5) == expected
    assert tree_formula(pm, tree, 2) == pm.state(2).atom.formula()
    with pytest.raises(ValueError):
        tree_formula(pm, tree, 0)


def test_tree_step_checks():
    pm = knows_p()
    tree = KTree(frozenset({2, 5}), 1)
    still = TreeStep(tree, tree, {2: (2,), 5: (5,)})
    assert check_tree_step(pm, still).clause == "progress"
    moved = TreeStep(tree, tree, {2: (2, 2), 5: (5, 5)})
    assert check_tree_step(pm, moved)
    assert check_tree_step(pm, TreeStep(tree, tree, {2: (2, 2)})).clause == "domain"
    assert check_tree_step(pm, TreeStep(tree, tree, {2: (5,), 5: (5,)})).clause == "start"
    assert check_tree_step(pm, TreeStep(tree, tree, {2: (2, 5), 5: (5,)})).clause == "advance"
    assert check_step_chain(pm, [moved, moved])


def test_fusion():
    assert fusion((1, 2), (2, 3)) == (1, 2, 3)
    with pytest.raises(SequenceError):
        fusion((), (1,))
    with pytest.raises(SequenceError, match="cannot fuse"):
        fusion((1, 2), (3,))


def test_compression():
    assert compression([1, 1, 2, 2, 3], step) == (1, 2, 3)
    assert compression([1, 1, 2], lambda a, b: True) == (1, 1, 2)
    assert compression([], step) == ()


def test_compression_of_lassos():
    assert compression_lasso([1], [2, 2], step) == Lasso((1, 2))
    assert compression_lasso([], [1, 2], lambda a, b: a != b) == Lasso((), (1, 2))
    assert compression_lasso([1, 1, 2], [], step) == Lasso((1, 2))


def test_tree_search_discharges_obligations():
    result = search_tree_sequence(parse("F q & K1 p"))
    assert result.rooted
    assert result.complete
    assert len(result.trees) >= 2
    assert len(result.steps) == len(result.trees) - 1
    assert result.discharged
    assert not result.pending
    for tree in result.trees:
        assert is_ktree(result.premodel, tree.states, tree.k)
    assert check_step_chain(result.premodel, result.steps)
    for s, seq in result.sequences().items():
        assert seq[0] == s
    assert result.render_text().splitlines()[-1] == "complete"
    assert result.to_document()["complete"] is True


def test_tree_search_edge_cases():
    trivial = search_tree_sequence(parse("p"))
    assert trivial.complete
    assert len(trivial.trees) == 1
    assert trivial.steps == ()
    hopeless = search_tree_sequence(parse("p & ~p"))
    assert not hopeless.rooted
    assert not hopeless.complete
    assert hopeless.render_text().startswith("no live epsilon-state")


def test_tree_search_budget_keeps_partial_result():
    with pytest.raises(SearchBudgetExceeded) as excinfo:
        search_tree_sequence(parse("F q & K1 p"), budget=1)
    partial = excinfo.value.partial
    assert len(partial.trees) == 1
    assert not partial.complete


def extensions(pm):
    return [acceptable_extension(pm, (s.id,)) for s in pm.states_at((), alive_only=True)]


def test_history_runs_stutter_after_horizon():
    pm = knows_p()
    for lasso in extensions(pm):
        run = derive_run(pm, lasso, "pr", 3)
        assert len(run.head) == 2
        assert len(run.loop) == 1
        assert not run.clocked
        assert run.truncated
    assert derive_run(pm, extensions(pm)[0], "pr_sync", 3).clocked


def test_future_runs_follow_the_lasso():
    pm = knows_p()
    for lasso in extensions(pm):
        run = derive_run(pm, lasso, "nl", 3)
        assert run.head == lasso.head
        assert run.loop == lasso.loop
        assert len(run.local_states(1)) == len(run.states)


def test_derive_run_errors():
    pm = knows_p()
    lasso = extensions(pm)[0]
    with pytest.raises(SequenceError):
        derive_run(pm, Lasso((2, 1)), "nl", 3)
    with pytest.raises(ValueError):
        derive_run(pm, lasso, "psychic", 3)
    with pytest.raises(ValueError):
        derive_run(pm, lasso, "pr", 0)
    with pytest.raises(SequenceError):
        derive_run(pm, Lasso(()), "pr", 3)
    with pytest.raises(SequenceError, match="one index level"):
        derive_run(pm, Lasso((2, 5)), "pr", 3)


def test_derived_systems_land_in_their_class():
    pm = knows_p()
    recall = derived_system(pm, [derive_run(pm, lasso, "pr", 3) for lasso in extensions(pm)])
    assert has_perfect_recall(recall, 1)
    future = derived_system(pm, [derive_run(pm, lasso, "nl", 3) for lasso in extensions(pm)])
    assert has_no_learning(future, 1)


def test_derived_system_errors():
    pm = knows_p()
    lasso = extensions(pm)[0]
    with pytest.raises(SequenceError):
        derived_system(pm, [])
    with pytest.raises(SequenceError, match="clocked"):
        derived_system(pm, [derive_run(pm, lasso, "pr", 3), derive_run(pm, lasso, "pr_sync", 3)])


@pytest.mark.parametrize("count", sweep_sizes(100))
def test_derived_runs_land_in_their_class_on_random_premodels(count):
    horizon = 3
    for index in range(count):
        rng = random.Random(seed_for("derive", index))
        pm = eliminate(build_premodel(random_formula(rng, FormulaBounds(depth=2, agents=2)), depth=0))
        lassos = extensions(pm)
        if not lassos:
            continue
        systems = {
            kind: derived_system(pm, [derive_run(pm, lasso, kind, horizon) for lasso in lassos])
            for kind in ("pr", "pr_sync", "nl", "nl_sync", "nl_pr")
        }
        assert is_synchronous(systems["pr_sync"])
        assert is_synchronous(systems["nl_sync"])
        for agent in range(1, pm.agents + 1):
            assert has_perfect_recall(systems["pr"], agent)
            assert has_perfect_recall(systems["pr_sync"], agent)
            assert has_no_learning(systems["nl"], agent)
            assert has_no_learning(systems["nl_sync"], agent)
            # histories stop growing at the horizon, so recall is only checked up to it
            assert has_perfect_recall(systems["nl_pr"], agent, horizon=horizon)
