"""Acceptable state sequences and the systems built from them."""

from __future__ import annotations

import logging
from collections import deque
from typing import Sequence

import networkx as nx

from ..errors import ExtractionError
from ..logic.formula import RESERVED_PROP, Prop, Until, props_of, sort_key
from ..properties.sequences import Lasso
from ..systems.model import Cell, LassoSystem, Point, fresh_token, from_lassos, run_names
from .elimination import reachability_components
from .premodel import PreModel

logger = logging.getLogger(__name__)


class Extender:
    """Builds acceptable lassos over the live part of one pre-model."""

    def __init__(self, pm: PreModel):
        self.pm = pm
        self.graph = nx.DiGraph()
        live = sorted(pm.alive)
        self.graph.add_nodes_from(live)
        for s in live:
            self.graph.add_edges_from((s, t) for t in pm.alive_successors(s))
        self._tours: dict[frozenset[int], tuple[int, ...]] = {}

    def _pending(self, path: Sequence[int]) -> list[Until]:
        """Untils open at the end of path, the longest-open first."""
        last = self.pm.state(path[-1])
        opened: list[tuple[int, tuple, Until]] = []
        for f in last.atom.closure.positives():
            if not isinstance(f, Until) or f not in last.atom or last.holds(f.right):
                continue
            start = len(path) - 1
            while start > 0:
                earlier = self.pm.state(path[start - 1])
                if f not in earlier.atom or earlier.holds(f.right):
                    break
                start -= 1
            opened.append((start, sort_key(f), f))
        return [f for _, _, f in sorted(opened, key=lambda item: item[:2])]

    def _route(self, start: int, until: Until) -> list[int]:
        """Shortest live path after start that reaches a state with the until's right side."""
        parent: dict[int, int | None] = {start: None}
        queue = deque([start])
        while queue:
            s = queue.popleft()
            if s != start and self.pm.state(s).holds(until.right):
                path = [s]
                while parent[path[-1]] != start:
                    path.append(parent[path[-1]])
                return path[::-1]
            if s != start and until not in self.pm.state(s).atom:
                continue
            for t in self.pm.alive_successors(s):
                if t not in parent:
                    parent[t] = s
                    queue.append(t)
        raise ExtractionError(f"no live path fulfils the until at s{start}")

    def _bottom(self, start: int) -> frozenset[int]:
        reach = nx.descendants(self.graph, start) | {start}
        condensed = nx.condensation(self.graph.subgraph(reach))
        bottoms = [
            frozenset(condensed.nodes[c]["members"]) for c in condensed.nodes if condensed.out_degree(c) == 0
        ]
        return min(bottoms, key=min)

    def _shortest(self, a: int, b: int) -> list[int]:
        return nx.shortest_path(self.graph, a, b)

    def tour(self, component: frozenset[int]) -> tuple[int, ...]:
        """A cycle from the lowest state through every state of a closed component."""
        if component not in self._tours:
            entry = min(component)
            cycle = [entry]
            for target in sorted(component - {entry}):
                if target not in cycle:
                    cycle.extend(self._shortest(cycle[-1], target)[1:])
            back = self._route_back(cycle[-1], entry)
            cycle.extend(back[1:-1])
            self._tours[component] = tuple(cycle)
        return self._tours[component]

    def _route_back(self, a: int, entry: int) -> list[int]:
        if a == entry:
            # a closed single-state component has a self loop
            return [entry, entry]
        return self._shortest(a, entry)

    def lasso(self, prefix: Sequence[int]) -> Lasso[int]:
        path = list(prefix)
        for until in self._pending(path):
            if until in self.pm.state(path[-1]).atom and not self.pm.state(path[-1]).holds(until.right):
                path.extend(self._route(path[-1], until))
        component = self._bottom(path[-1])
        loop = self.tour(component)
        path.extend(self._shortest(path[-1], loop[0])[1:])
        return Lasso(tuple(path[:-1]), loop)


def _check_prefix(pm: PreModel, prefix: Sequence[int]) -> None:
    if not prefix:
        raise ExtractionError("an extension needs a nonempty prefix")
    index = pm.state(prefix[0]).index
    for position, s in enumerate(prefix):
        if s not in pm.alive:
            raise ExtractionError(f"prefix state s{s} was eliminated")
        if pm.state(s).index != index:
            raise ExtractionError("prefix states must share one index")
        if position and s not in pm.successors.get(prefix[position - 1], ()):
            raise ExtractionError(f"s{prefix[position - 1]} -> s{s} is not a step")


def acceptable_extension(pm: PreModel, prefix: Sequence[int]) -> Lasso[int]:
    """Extend a live prefix to a lasso whose unfolding fulfils every until.

    Open obligations are served oldest first; the loop then tours a
    closed strongly connected component of the live states.
    """
    _check_prefix(pm, prefix)
    return Extender(pm).lasso(prefix)


def is_acceptable(pm: PreModel, lasso: Lasso[int]) -> bool:
    """Scan the unfolding up to three times the lasso length."""
    if not lasso.loop:
        return False
    span = len(lasso.head) + len(lasso.loop)
    word = lasso.prefix(3 * span + 1)
    for a, b in zip(word, word[1:]):
        if b not in pm.successors.get(a, ()):
            return False
    for position in range(span):
        state = pm.state(word[position])
        for f in state.atom.closure.positives():
            if isinstance(f, Until) and f in state.atom:
                if not any(pm.state(word[k]).holds(f.right) for k in range(position, position + 2 * span)):
                    return False
    return True


def _valuation(pm: PreModel, s: int) -> frozenset[str]:
    atom = pm.state(s).atom
    return frozenset(name for name in props_of(pm.psi) if name != RESERVED_PROP and Prop(name) in atom)


def _cell(pm: PreModel, s: int) -> Cell:
    locals_ = tuple(pm.information_token(s, agent) for agent in range(1, pm.agents + 1))
    return Cell(f"s{s}", locals_, _valuation(pm, s))


def relevant_states(pm: PreModel, designated: int) -> list[int]:
    """Live states reachable from the designated one through steps and ~_i links."""
    labels = reachability_components(pm, pm.alive)
    by_component: dict[int, list[int]] = {}
    for s in sorted(pm.alive):
        by_component.setdefault(labels[s], []).append(s)
    seen = {designated}
    queue = deque([designated])
    while queue:
        s = queue.popleft()
        for t in list(pm.alive_successors(s)) + by_component[labels[s]]:
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return [designated] + sorted(seen - {designated})


def extract_system(
    pm: PreModel, designated: int, clocked: bool = False, cover: int = 0
) -> tuple[LassoSystem, Point]:
    """One run per relevant state, labelled by the state's current information.

    Clocked systems get one run per relevant state and start offset
    0..cover, padded with a fresh token before the start.
    """
    extender = Extender(pm)
    states = relevant_states(pm, designated)
    lassos = {s: extender.lasso((s,)) for s in states}
    props = {name for name in props_of(pm.psi) if name != RESERVED_PROP}
    cells = {s: _cell(pm, s) for s in states}

    def cells_of(s: int, offset: int, pad: Cell | None):
        lasso = lassos[s]
        head = [pad] * offset + [cells[t] for t in lasso.head]
        return head, [cells[t] for t in lasso.loop]

    if not clocked:
        runs = [cells_of(s, 0, None) for s in states]
    else:
        used = {token for cell in cells.values() for token in (cell.env, *cell.locals)}
        token = fresh_token(used, "x")
        pad = Cell(token, tuple(token for _ in range(pm.agents)))
        runs = [cells_of(s, offset, pad) for offset in range(cover + 1) for s in states]
    system = from_lassos(pm.agents, clocked, runs, props, run_names(len(runs)))
    logger.info("extracted %s runs over %s states (cover %s)", len(runs), len(states), cover)
    return system, Point(0, 0)


def designated_lasso_length(pm: PreModel, designated: int) -> int:
    lasso = Extender(pm).lasso((designated,))
    return len(lasso.head) + len(lasso.loop)
