"""k-trees over a pre-model and the formulas that describe them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ..logic.closure import absorptive_concat
from ..logic.formula import And, Formula, possible
from ..tableau.premodel import PreModel

TREE_CLAUSES = ("depth", "unique-root", "upward-closure", "downward-witness")


@dataclass(frozen=True)
class KTree:
    states: frozenset[int]
    k: int

    def __contains__(self, state_id: object) -> bool:
        return state_id in self.states

    def ordered(self) -> list[int]:
        return sorted(self.states)


@dataclass(frozen=True)
class TreeVerdict:
    ok: bool
    clause: str | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _upward_partners(pm: PreModel, s: int, k: int) -> Iterable[int]:
    """Live (sigma#i)-states ~_i s with |sigma#i| <= k, over every agent."""
    state = pm.state(s)
    for agent in range(1, pm.agents + 1):
        target = absorptive_concat(state.index, agent)
        if len(target) > k:
            continue
        for t in pm.partners(s, agent):
            if pm.state(t).index == target:
                yield t


def is_ktree(pm: PreModel, states: Iterable[int], k: int) -> TreeVerdict:
    """Check the tree conditions against the live states of the pre-model."""
    members = frozenset(states)
    for s in sorted(members):
        if len(pm.state(s).index) > k:
            return TreeVerdict(False, "depth", f"s{s} sits below level {k}")
    roots = [s for s in members if not pm.state(s).index]
    if len(roots) != 1:
        return TreeVerdict(False, "unique-root", f"{len(roots)} epsilon-states")
    for s in sorted(members):
        for t in _upward_partners(pm, s, k):
            if t not in members:
                return TreeVerdict(False, "upward-closure", f"s{t} is ~ s{s} but missing")
        index = pm.state(s).index
        if index:
            parent, agent = index[:-1], index[-1]
            if not any(pm.state(t).index == parent and pm.related(s, t, agent) for t in members):
                return TreeVerdict(False, "downward-witness", f"s{s} has no parent at level {list(parent)}")
    return TreeVerdict(True)


def close_tree(pm: PreModel, seeds: Iterable[int], k: int) -> KTree:
    """seeds together with every live upward partner, level by level up to k."""
    members = set(seeds)
    frontier = sorted(members)
    while frontier:
        s = frontier.pop()
        for t in _upward_partners(pm, s, k):
            if t not in members:
                members.add(t)
                frontier.append(t)
    return KTree(frozenset(members), k)


def grow_tree(pm: PreModel, root: int, k: int) -> KTree:
    """The least k-tree containing the epsilon-state root."""
    if pm.state(root).index:
        raise ValueError(f"s{root} is not an epsilon-state")
    return close_tree(pm, {root}, k)


def tree_formula(pm: PreModel, tree: KTree, s: int) -> Formula:
    """tree_{S,s}: phi_s, plus L_i tree_{S,t} for each parent-level t ~_i s."""
    if s not in tree:
        raise ValueError(f"s{s} is not in the tree")
    state = pm.state(s)
    result = state.atom.formula()
    if not state.index:
        return result
    parent, agent = state.index[:-1], state.index[-1]
    for t in tree.ordered():
        if pm.state(t).index == parent and pm.related(s, t, agent):
            result = And(result, possible(agent, tree_formula(pm, tree, t)))
    return result
