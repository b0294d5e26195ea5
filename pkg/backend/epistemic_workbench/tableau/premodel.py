"""Pre-models: sigma-states over closure atoms with the temporal and epistemic relations."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Any, Mapping

from ..errors import ClosureLimitError, UnsupportedFormulaError
from ..logic.closure import (
    DEFAULT_CLOSURE_CAP,
    ClosureSet,
    absorptive_concat,
    basic_closure,
    canonical_disjunction,
    indices_up_to,
    level_closure,
)
from ..logic.formula import (
    FALSE,
    Formula,
    Next,
    Until,
    alternation_depth,
    max_agent,
    mentions_common,
    sorted_formulas,
    to_text,
)
from .atoms import Atom, atoms_of

logger = logging.getLogger(__name__)

Index = tuple[int, ...]
Information = tuple[Index, frozenset[Formula]]


@dataclass(frozen=True)
class SigmaState:
    id: int
    index: Index
    atom: Atom

    @property
    def label(self) -> str:
        return f"s{self.id}"

    def holds(self, f: Formula) -> bool | None:
        return self.atom.holds(f)


def current_information(state: SigmaState, agent: int) -> Information:
    """O_i(s): the index sigma#i together with X/K_i."""
    return absorptive_concat(state.index, agent), state.atom.knowledge(agent)


@dataclass(frozen=True, eq=False)
class PreModel:
    """States, the next-state relation and one equivalence per agent.

    ``alive`` marks the states that survived elimination; a freshly built
    pre-model has every state alive.
    """

    psi: Formula
    depth: int
    agents: int
    flat: bool
    states: tuple[SigmaState, ...]
    successors: Mapping[int, tuple[int, ...]]
    alive: frozenset[int]
    rounds: tuple[int, ...] = field(default_factory=tuple)

    def state(self, state_id: int) -> SigmaState:
        return self.states[state_id]

    def information(self, state_id: int, agent: int) -> Information:
        return current_information(self.states[state_id], agent)

    @cached_property
    def _classes(self) -> dict[int, dict[Information, tuple[int, ...]]]:
        classes: dict[int, dict[Information, tuple[int, ...]]] = {}
        for agent in range(1, self.agents + 1):
            buckets: dict[Information, list[int]] = {}
            for state in self.states:
                buckets.setdefault(current_information(state, agent), []).append(state.id)
            classes[agent] = {key: tuple(ids) for key, ids in buckets.items()}
        return classes

    def classes(self, agent: int) -> dict[Information, tuple[int, ...]]:
        """The ~_i equivalence classes, keyed by current information, in state order."""
        return self._classes[agent]

    def related(self, a: int, b: int, agent: int) -> bool:
        return self.information(a, agent) == self.information(b, agent)

    def partners(self, state_id: int, agent: int, alive_only: bool = True) -> tuple[int, ...]:
        members = self._classes[agent][self.information(state_id, agent)]
        if alive_only:
            return tuple(t for t in members if t in self.alive)
        return members

    def information_token(self, state_id: int, agent: int) -> str:
        """Short name for O_i(s), stable for a given pre-model."""
        keys = list(self._classes[agent])
        return f"o{agent}.{keys.index(self.information(state_id, agent))}"

    def alive_successors(self, state_id: int) -> tuple[int, ...]:
        return tuple(t for t in self.successors.get(state_id, ()) if t in self.alive)

    def states_at(self, index: Index, alive_only: bool = False) -> list[SigmaState]:
        return [s for s in self.states if s.index == index and (not alive_only or s.id in self.alive)]

    def with_alive(self, alive: frozenset[int], rounds: tuple[int, ...]) -> "PreModel":
        return replace(self, alive=alive, rounds=rounds)


def premodel_depth(psi: Formula, depth: int | None = None) -> int:
    if mentions_common(psi):
        if depth:
            raise UnsupportedFormulaError("formulas with E or C are handled at depth 0 only")
        return 0
    return alternation_depth(psi) if depth is None else depth


def _temporal_parts(closure: ClosureSet) -> tuple[tuple[Formula, ...], tuple[Until, ...]]:
    nexts = tuple(f.operand for f in closure.ordered() if isinstance(f, Next))
    untils = tuple(f for f in closure.ordered() if isinstance(f, Until))
    return nexts, untils


def _signature(atom: Atom, nexts, untils) -> tuple[bool, ...]:
    return tuple(atom.holds(f) is True for f in nexts) + tuple(u in atom for u in untils)


def _requirement(atom: Atom, nexts, untils) -> dict[int, bool]:
    """Signature positions a successor of this atom is pinned to."""
    wanted = {k: Next(f) in atom for k, f in enumerate(nexts)}
    for k, u in enumerate(untils):
        if not atom.holds(u.right) and atom.holds(u.left):
            wanted[len(nexts) + k] = u in atom
    return wanted


def _successors(states: list[SigmaState], closure: ClosureSet) -> dict[int, tuple[int, ...]]:
    nexts, untils = _temporal_parts(closure)
    by_signature: dict[tuple[bool, ...], list[int]] = {}
    for state in states:
        by_signature.setdefault(_signature(state.atom, nexts, untils), []).append(state.id)
    result: dict[int, tuple[int, ...]] = {}
    for state in states:
        wanted = _requirement(state.atom, nexts, untils)
        found: list[int] = []
        for signature, ids in by_signature.items():
            if all(signature[k] == value for k, value in wanted.items()):
                found.extend(ids)
        result[state.id] = tuple(sorted(found))
    return result


def build_premodel(
    psi: Formula,
    depth: int | None = None,
    agents: int | None = None,
    cap: int = DEFAULT_CLOSURE_CAP,
    flat: bool = False,
) -> PreModel:
    """All sigma-states for psi with |sigma| <= d, and the relations between them.

    The epsilon-states range over atoms of cl_d and tau-i states over atoms
    of cl_{d-|sigma|,i}. With ``flat`` every level uses the basic closure
    instead, which keeps deeper indices within reach.
    """
    d = premodel_depth(psi, depth)
    m = max(agents or 0, max_agent(psi), 1)
    closures: dict[tuple[int, int | None], ClosureSet] = {}
    atoms: dict[tuple[int, int | None], list[Atom]] = {}

    def closure_for(index: Index) -> tuple[tuple[int, int | None], ClosureSet]:
        key = (0, None) if flat else ((d, None) if not index else (d - len(index), index[-1]))
        if key not in closures:
            if flat:
                closures[key] = basic_closure(psi, m)
            else:
                closures[key] = level_closure(psi, key[0], key[1], m, cap)
        return key, closures[key]

    states: list[SigmaState] = []
    successors: dict[int, tuple[int, ...]] = {}
    for index in indices_up_to(d, m):
        key, closure = closure_for(index)
        if key not in atoms:
            atoms[key] = atoms_of(closure, cap)
        level = []
        for atom in atoms[key]:
            level.append(SigmaState(len(states), index, atom))
            states.append(level[-1])
            if len(states) > cap:
                raise ClosureLimitError(len(states), cap, "states")
        successors.update(_successors(level, closure))
    logger.info("pre-model for %s: depth %s, %s states", to_text(psi), d, len(states))
    return PreModel(psi, d, m, flat, tuple(states), successors, frozenset(s.id for s in states))


def phi_formulas(pm: PreModel, state: SigmaState, agent: int, plus: bool = False) -> Formula:
    """Phi_{s,i}: the disjunction of phi_t over states t ~_i s at level sigma, or sigma#i."""
    level = absorptive_concat(state.index, agent) if plus else state.index
    members = [t.atom.formula() for t in pm.states_at(level) if pm.related(state.id, t.id, agent)]
    if not members:
        return FALSE
    return canonical_disjunction(members)


def premodel_to_document(pm: PreModel) -> dict[str, Any]:
    return {
        "formula": to_text(pm.psi),
        "depth": pm.depth,
        "agents": pm.agents,
        "flat": pm.flat,
        "states": [
            {
                "id": s.id,
                "index": list(s.index),
                "atom": [to_text(f) for f in sorted_formulas(s.atom.members)],
                "alive": s.id in pm.alive,
            }
            for s in pm.states
        ],
        "next": {str(s.id): list(pm.successors.get(s.id, ())) for s in pm.states},
        "classes": {
            str(agent): [list(ids) for ids in pm.classes(agent).values()] for agent in range(1, pm.agents + 1)
        },
        "rounds": list(pm.rounds),
    }


def render_premodel(pm: PreModel) -> str:
    """One line per state: label, index, atom, alive successors."""
    lines = [f"pre-model for {to_text(pm.psi)} (depth {pm.depth}, {len(pm.alive)}/{len(pm.states)} alive)"]
    for s in pm.states:
        index = ".".join(map(str, s.index)) or "e"
        status = "" if s.id in pm.alive else "  [eliminated]"
        targets = ", ".join(f"s{t}" for t in pm.alive_successors(s.id)) or "-"
        lines.append(f"{s.label} [{index}] {{{', '.join(s.atom.labels())}}} -> {targets}{status}")
    return "\n".join(lines)
