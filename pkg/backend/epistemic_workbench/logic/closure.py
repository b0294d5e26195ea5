"""Closure sets, agent indices and absorptive concatenation."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Sequence, TypeVar

from ..errors import ClosureLimitError
from .formula import (
    Common,
    Everyone,
    Formula,
    Know,
    Not,
    children,
    disj_all,
    max_agent,
    sort_key,
    sorted_formulas,
)

logger = logging.getLogger(__name__)

DEFAULT_CLOSURE_CAP = 2**16

T = TypeVar("T", bound=Hashable)


def absorptive_concat(seq: Sequence[T], x: T) -> tuple[T, ...]:
    """``seq # x``: seq itself when it already ends in x, else seq with x appended."""
    items = tuple(seq)
    if items and items[-1] == x:
        return items
    return items + (x,)


def absorb(values: Iterable[T]) -> tuple[T, ...]:
    """Fold ``#`` over values, omitting consecutive repetitions."""
    result: tuple[T, ...] = ()
    for value in values:
        result = absorptive_concat(result, value)
    return result


def is_index(sigma: Sequence[int]) -> bool:
    return all(a >= 1 for a in sigma) and all(a != b for a, b in zip(sigma, sigma[1:]))


def indices_up_to(depth: int, agents: int) -> list[tuple[int, ...]]:
    """All indices of length at most depth, shortest first."""
    level: list[tuple[int, ...]] = [()]
    result = [()]
    for _ in range(depth):
        level = [sigma + (i,) for sigma in level for i in range(1, agents + 1) if not sigma or sigma[-1] != i]
        result.extend(level)
    return result


@dataclass(frozen=True)
class ClosureSet:
    formulas: frozenset[Formula]
    kind: str
    k: int = 0
    agent: int | None = None
    agents: int = 1

    def __contains__(self, f: object) -> bool:
        return f in self.formulas

    def __len__(self) -> int:
        return len(self.formulas)

    def __iter__(self):
        return iter(self.ordered())

    @cached_property
    def _canonical(self) -> tuple[Formula, ...]:
        return tuple(sorted_formulas(self.formulas))

    def ordered(self) -> tuple[Formula, ...]:
        return self._canonical

    def positives(self) -> tuple[Formula, ...]:
        """Members that are not negations, in canonical order."""
        return tuple(f for f in self.ordered() if not isinstance(f, Not))

    def knowledge_formulas(self, agent: int) -> tuple[Formula, ...]:
        return tuple(f for f in self.ordered() if isinstance(f, Know) and f.agent == agent)


def basic_closure(psi: Formula, agents: int | None = None) -> ClosureSet:
    """cl_0: the least set closed under the closure rules."""
    m = max(agents or 0, max_agent(psi), 1)
    members: set[Formula] = set()
    pending: list[Formula] = []

    def add(f: Formula) -> None:
        if f not in members:
            members.add(f)
            pending.append(f)

    add(psi)
    while pending:
        f = pending.pop()
        for child in children(f):
            add(child)
        if not isinstance(f, Not):
            add(Not(f))
        if isinstance(f, Common):
            add(Everyone(f))
        if isinstance(f, Everyone):
            for i in range(1, m + 1):
                add(Know(i, f.operand))
    return ClosureSet(frozenset(members), "basic", 0, None, m)


def canonical_disjunction(formulas: Iterable[Formula]) -> Formula:
    """Right-nested disjunction of the distinct members in canonical order."""
    members = sorted(set(formulas), key=sort_key)
    if not members:
        raise ValueError("empty disjunction")
    return disj_all(members)


def _guard(base: int, cap: int) -> None:
    # |cl_{k,i}| = base + 2 * (2**base - 1) when no K_i formula collides
    if base >= cap.bit_length() or base + 2 * ((1 << base) - 1) > cap:
        raise ClosureLimitError(base + 2 * ((1 << min(base, 64)) - 1), cap)


def _extend_with_agent(base: ClosureSet, agent: int, cap: int) -> frozenset[Formula]:
    _guard(len(base), cap)
    members = set(base.formulas)
    ordered = base.ordered()
    for width in range(1, len(ordered) + 1):
        for chosen in combinations(ordered, width):
            knowledge = Know(agent, disj_all(chosen))
            members.add(knowledge)
            members.add(Not(knowledge))
    return frozenset(members)


def level_closure(
    psi: Formula,
    k: int,
    agent: int | None = None,
    agents: int | None = None,
    cap: int = DEFAULT_CLOSURE_CAP,
) -> ClosureSet:
    """cl_k(psi), or cl_{k,i}(psi) when an agent is given."""
    if k < 0:
        raise ValueError("closure level must be non-negative")
    current = basic_closure(psi, agents)
    m = current.agents
    for level in range(k):
        merged: set[Formula] = set()
        for i in range(1, m + 1):
            merged |= _extend_with_agent(current, i, cap)
        if len(merged) > cap:
            raise ClosureLimitError(len(merged), cap)
        current = ClosureSet(frozenset(merged), "k-level", level + 1, None, m)
    if agent is None:
        return current
    if agent < 1 or agent > m:
        raise ValueError(f"agent {agent} outside 1..{m}")
    extended = _extend_with_agent(current, agent, cap)
    logger.debug("cl_{%s,%s} has %s formulas", k, agent, len(extended))
    return ClosureSet(extended, "ki-level", k, agent, m)


def has_negation_property(closure: ClosureSet) -> bool:
    for f in closure.formulas:
        if Not(f) in closure.formulas:
            continue
        if isinstance(f, Not) and f.operand in closure.formulas:
            continue
        return False
    return True
