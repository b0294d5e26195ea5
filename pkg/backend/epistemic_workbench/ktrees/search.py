"""Bounded search for a sequence of trees that discharges until obligations.

Starting from the least tree around an epsilon-state satisfying psi,
each step moves the state holding the oldest open obligation (ties by
state id, then formula order) towards a state that fulfils it. Other
states with open untils of their own try a fulfilling successor first;
the rest prefer to stay put and move only when concordance forces
them to. The search stops once every obligation carried over from an
earlier tree is discharged, or when the step or node budget runs out.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Iterator

from ..errors import SearchBudgetExceeded
from ..logic.closure import DEFAULT_CLOSURE_CAP
from ..logic.formula import Formula, Until, sort_key, to_text
from ..properties.concordance import concordant_sequences
from ..tableau.elimination import eliminate
from ..tableau.premodel import PreModel, build_premodel, premodel_depth
from .steps import TreeStep, fusion
from .trees import KTree, close_tree, is_ktree

logger = logging.getLogger(__name__)

DEFAULT_TREE_BUDGET = 10_000
DEFAULT_MAX_STEPS = 16


@dataclass(frozen=True)
class Obligation:
    state: int
    until: Until
    since: int

    def describe(self) -> str:
        return f"s{self.state}: {to_text(self.until)} (open since tree {self.since})"


@dataclass(frozen=True)
class TreeSearchResult:
    psi: Formula
    premodel: PreModel = field(repr=False)
    trees: tuple[KTree, ...]
    steps: tuple[TreeStep, ...]
    open: tuple[Obligation, ...]
    discharged: tuple[Obligation, ...]
    complete: bool
    examined: int

    @property
    def rooted(self) -> bool:
        return bool(self.trees)

    @property
    def pending(self) -> tuple[Obligation, ...]:
        """Open obligations carried over from an earlier tree."""
        last = len(self.trees) - 1
        return tuple(o for o in self.open if o.since < last)

    def sequences(self) -> dict[int, tuple[int, ...]]:
        """For each state of the first tree, the fusion of the f-sequences it follows."""
        if not self.trees:
            return {}
        result = {}
        for s in self.trees[0].ordered():
            seq: tuple[int, ...] = (s,)
            for step in self.steps:
                seq = fusion(seq, step.f[seq[-1]])
            result[s] = seq
        return result

    def render_text(self) -> str:
        if not self.rooted:
            return f"no live epsilon-state satisfies {to_text(self.psi)}"
        lines = [f"tree sequence for {to_text(self.psi)}: {len(self.trees)} trees, {self.examined} nodes examined"]
        for position, tree in enumerate(self.trees):
            lines.append(f"  S{position} = {{{', '.join(f's{s}' for s in tree.ordered())}}}")
        for position, step in enumerate(self.steps):
            moves = ", ".join(f"s{s}: {' '.join(f's{t}' for t in step.f[s])}" for s in step.moved())
            lines.append(f"  step {position}: {moves}")
        for obligation in self.discharged:
            lines.append(f"  discharged {obligation.describe()}")
        for obligation in self.open:
            lines.append(f"  open {obligation.describe()}")
        lines.append("complete" if self.complete else "incomplete")
        return "\n".join(lines)

    def to_document(self) -> dict[str, Any]:
        def obligation(o: Obligation) -> dict[str, Any]:
            return {"state": o.state, "until": to_text(o.until), "since": o.since}

        return {
            "formula": to_text(self.psi),
            "depth": self.premodel.depth,
            "trees": [tree.ordered() for tree in self.trees],
            "steps": [{str(s): list(seq) for s, seq in sorted(step.f.items())} for step in self.steps],
            "open": [obligation(o) for o in self.open],
            "discharged": [obligation(o) for o in self.discharged],
            "complete": self.complete,
            "examined": self.examined,
        }


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self) -> None:
        self.used += 1
        if self.used > self.limit:
            raise SearchBudgetExceeded(f"tree search examined more than {self.limit} nodes")


def _open_untils(pm: PreModel, s: int) -> list[Until]:
    state = pm.state(s)
    found = [f for f in state.atom.closure.positives() if isinstance(f, Until) and f in state.atom]
    return sorted((f for f in found if not state.holds(f.right)), key=sort_key)


class _StepSearch:
    """Depth-first choice of f(s) for every state of one tree."""

    def __init__(self, pm: PreModel, tree: KTree, target: Obligation | None, budget: _Budget):
        self.pm = pm
        self.tree = tree
        self.target = target
        self.budget = budget
        first = [target.state] if target is not None else []
        self.order = first + [s for s in tree.ordered() if s not in first]

    def _options(self, s: int) -> list[tuple[int, ...]]:
        successors = list(self.pm.alive_successors(s))
        if self.target is not None and s == self.target.state:
            right = self.target.until.right
            fulfilling = [t for t in successors if self.pm.state(t).holds(right)]
            return [(s, t) for t in fulfilling + [t for t in successors if t not in fulfilling]] + [(s,)]
        pending = _open_untils(self.pm, s)
        fulfilling = [t for t in successors if any(self.pm.state(t).holds(u.right) for u in pending)]
        rest = [t for t in successors if t not in fulfilling]
        return [(s, t) for t in fulfilling] + [(s,)] + [(s, t) for t in rest]

    def _consistent(self, assigned: dict[int, tuple[int, ...]], s: int, option: tuple[int, ...]) -> bool:
        for other, seq in assigned.items():
            for agent in range(1, self.pm.agents + 1):
                if not self.pm.related(s, other, agent):
                    continue
                related = lambda a, b, agent=agent: self.pm.related(a, b, agent)  # noqa: E731
                if not concordant_sequences(option, seq, related):
                    return False
        return True

    def _walk(self, position: int, assigned: dict[int, tuple[int, ...]]) -> Iterator[dict[int, tuple[int, ...]]]:
        if position == len(self.order):
            yield dict(assigned)
            return
        s = self.order[position]
        for option in self._options(s):
            self.budget.spend()
            if self._consistent(assigned, s, option):
                assigned[s] = option
                yield from self._walk(position + 1, assigned)
                del assigned[s]

    def first(self) -> TreeStep | None:
        for f in self._walk(0, {}):
            if not any(len(seq) > 1 for seq in f.values()):
                continue
            target = close_tree(self.pm, {seq[-1] for seq in f.values()}, self.tree.k)
            if is_ktree(self.pm, target.states, self.tree.k):
                return TreeStep(self.tree, target, f)
        return None


def _advance(
    pm: PreModel, step: TreeStep, open_: dict[tuple[int, Until], Obligation], position: int
) -> tuple[dict[tuple[int, Until], Obligation], list[Obligation]]:
    """Carry obligations along f; those fulfilled on the way are discharged."""
    carried: dict[tuple[int, Until], Obligation] = {}
    discharged: list[Obligation] = []
    for (s, until), obligation in open_.items():
        seq = step.f[s]
        if any(pm.state(t).holds(until.right) for t in seq[1:]):
            discharged.append(obligation)
            continue
        key = (seq[-1], until)
        previous = carried.get(key)
        if previous is None or obligation.since < previous.since:
            carried[key] = Obligation(seq[-1], until, obligation.since)
    for s in step.target.ordered():
        for until in _open_untils(pm, s):
            carried.setdefault((s, until), Obligation(s, until, position))
    return carried, discharged


def _oldest(open_: dict[tuple[int, Until], Obligation]) -> Obligation | None:
    if not open_:
        return None
    return min(open_.values(), key=lambda o: (o.since, o.state, sort_key(o.until)))


def search_tree_sequence(
    psi: Formula,
    budget: int = DEFAULT_TREE_BUDGET,
    max_steps: int = DEFAULT_MAX_STEPS,
    depth: int | None = None,
    cap: int = DEFAULT_CLOSURE_CAP,
) -> TreeSearchResult:
    """Search for trees S0 ->_f0 S1 ->_f1 ... until carried obligations are discharged.

    Raises SearchBudgetExceeded when the node budget runs out; the
    exception's ``partial`` attribute holds the sequence found so far.
    """
    d = premodel_depth(psi, depth)
    pm = eliminate(build_premodel(psi, depth=d, cap=cap, flat=True))
    roots = [s.id for s in pm.states_at((), alive_only=True) if s.holds(psi)]
    if not roots:
        logger.info("no live epsilon-state satisfies %s", to_text(psi))
        return TreeSearchResult(psi, pm, (), (), (), (), False, 0)

    meter = _Budget(budget)
    trees = [close_tree(pm, {roots[0]}, d)]
    steps: list[TreeStep] = []
    open_ = {(s, u): Obligation(s, u, 0) for s in trees[0].ordered() for u in _open_untils(pm, s)}
    discharged: list[Obligation] = []

    def result(complete: bool) -> TreeSearchResult:
        ordered = sorted(open_.values(), key=lambda o: (o.since, o.state, sort_key(o.until)))
        return TreeSearchResult(
            psi, pm, tuple(trees), tuple(steps), tuple(ordered), tuple(discharged), complete, meter.used
        )

    def settled() -> bool:
        return all(o.since == len(steps) for o in open_.values()) and (bool(steps) or not open_)

    try:
        while not settled():
            if len(steps) >= max_steps:
                logger.info("tree search for %s stopped after %s steps", to_text(psi), len(steps))
                return result(False)
            step = _StepSearch(pm, trees[-1], _oldest(open_), meter).first()
            if step is None:
                logger.info("no tree step out of S%s for %s", len(steps), to_text(psi))
                return result(False)
            steps.append(step)
            trees.append(step.target)
            open_, done = _advance(pm, step, open_, len(steps))
            discharged.extend(done)
    except SearchBudgetExceeded as error:
        error.partial = result(False)
        raise
    logger.info("tree search for %s: %s trees, %s nodes", to_text(psi), len(trees), meter.used)
    return result(True)
