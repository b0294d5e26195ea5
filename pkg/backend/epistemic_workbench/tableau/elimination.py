"""Pruning a pre-model down to the states that can be realised."""

from __future__ import annotations

import logging
from collections import deque

import networkx as nx

from ..logic.formula import Common, Know, Until, to_text
from .premodel import PreModel

logger = logging.getLogger(__name__)


def _without_successor(pm: PreModel, alive: set[int]) -> set[int]:
    return {s for s in alive if not any(t in alive for t in pm.successors.get(s, ()))}


def _unwitnessed_knowledge(pm: PreModel, alive: set[int]) -> set[int]:
    doomed: set[int] = set()
    witnessed: dict[tuple[int, object, object], bool] = {}
    for s in alive:
        state = pm.state(s)
        for f in state.atom.closure.positives():
            if not isinstance(f, Know) or f in state.atom:
                continue
            key = (f.agent, pm.information(s, f.agent), f.operand)
            if key not in witnessed:
                witnessed[key] = any(
                    pm.state(t).holds(f.operand) is False for t in pm.partners(s, f.agent, alive_only=False) if t in alive
                )
            if not witnessed[key]:
                doomed.add(s)
                break
    return doomed


def _unfulfilled_untils(pm: PreModel, alive: set[int]) -> set[int]:
    untils = {f for s in alive for f in pm.state(s).atom.closure.positives() if isinstance(f, Until)}
    predecessors: dict[int, list[int]] = {s: [] for s in alive}
    for s in alive:
        for t in pm.successors.get(s, ()):
            if t in alive:
                predecessors[t].append(s)
    doomed: set[int] = set()
    for until in untils:
        fulfilled = {s for s in alive if pm.state(s).holds(until.right)}
        queue = deque(fulfilled)
        while queue:
            t = queue.popleft()
            for s in predecessors[t]:
                state = pm.state(s)
                if s not in fulfilled and until in state.atom and state.holds(until.left):
                    fulfilled.add(s)
                    queue.append(s)
        doomed.update(s for s in alive if until in pm.state(s).atom and s not in fulfilled)
    return doomed


def reachability_components(pm: PreModel, alive: set[int] | frozenset[int]) -> dict[int, int]:
    """Component label per live state under the union of the ~_i relations."""
    graph = nx.Graph()
    graph.add_nodes_from(alive)
    for agent in range(1, pm.agents + 1):
        for members in pm.classes(agent).values():
            live = [s for s in members if s in alive]
            graph.add_edges_from((live[0], other) for other in live[1:])
    labels: dict[int, int] = {}
    for index, component in enumerate(nx.connected_components(graph)):
        for s in component:
            labels[s] = index
    return labels


def _unwitnessed_common(pm: PreModel, alive: set[int]) -> set[int]:
    commons = {f for s in alive for f in pm.state(s).atom.closure.positives() if isinstance(f, Common)}
    if not commons:
        return set()
    labels = reachability_components(pm, alive)
    doomed: set[int] = set()
    for common in commons:
        refuted = {labels[s] for s in alive if pm.state(s).holds(common.operand) is False}
        doomed.update(
            s for s in alive if common in pm.state(s).atom.closure and common not in pm.state(s).atom and labels[s] not in refuted
        )
    return doomed


def eliminate(pm: PreModel) -> PreModel:
    """Greatest set of states meeting every successor, witness and eventuality demand.

    Deletion is monotone, so the loop runs at most once per state.
    """
    alive = set(pm.alive)
    rounds: list[int] = []
    while True:
        doomed = (
            _without_successor(pm, alive)
            | _unwitnessed_knowledge(pm, alive)
            | _unfulfilled_untils(pm, alive)
            | _unwitnessed_common(pm, alive)
        )
        if not doomed:
            break
        alive -= doomed
        rounds.append(len(doomed))
        logger.debug("elimination round %s removed %s states", len(rounds), len(doomed))
    logger.info(
        "elimination for %s: %s rounds, %s of %s states survive",
        to_text(pm.psi),
        len(rounds),
        len(alive),
        len(pm.states),
    )
    return pm.with_alive(frozenset(alive), pm.rounds + tuple(rounds))
