"""Atoms: maximal locally consistent subsets of a closure."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterator

from ..errors import ClosureLimitError, UnsupportedFormulaError
from ..logic.closure import DEFAULT_CLOSURE_CAP, ClosureSet
from ..logic.formula import (
    RESERVED_PROP,
    And,
    Common,
    Everyone,
    Formula,
    Know,
    Next,
    Not,
    Prop,
    Until,
    conj_all,
    size,
    sort_key,
    sorted_formulas,
    to_text,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Atom:
    """The closure members that hold; every other member is decided false."""

    members: frozenset[Formula]
    closure: ClosureSet = field(compare=False, repr=False)

    def __contains__(self, f: object) -> bool:
        return f in self.members

    def holds(self, f: Formula) -> bool | None:
        """Truth of a Boolean combination of closure members, None if undecided."""
        if f in self.closure:
            return f in self.members
        if isinstance(f, Prop) and f.name == RESERVED_PROP:
            return False
        if isinstance(f, Not):
            inner = self.holds(f.operand)
            return None if inner is None else not inner
        if isinstance(f, And):
            left, right = self.holds(f.left), self.holds(f.right)
            if left is False or right is False:
                return False
            if left is None or right is None:
                return None
            return True
        return None

    def knowledge(self, agent: int) -> frozenset[Formula]:
        """X/K_i: the formulas phi with K_i phi in the atom."""
        return frozenset(f.operand for f in self.members if isinstance(f, Know) and f.agent == agent)

    def formula(self) -> Formula:
        return conj_all(sorted_formulas(self.members))

    def labels(self) -> list[str]:
        return [to_text(f) for f in sorted_formulas(self.members)]


def _decision_order(closure: ClosureSet) -> list[Formula]:
    # E phi is decided after the K_j phi of equal size it is defined by
    def key(f: Formula):
        return (size(f), 1 if isinstance(f, Everyone) else 0, sort_key(f))

    return sorted(closure.positives(), key=key)


def _value(f: Formula, chosen: dict[Formula, bool]) -> bool | None:
    if f in chosen:
        return chosen[f]
    if isinstance(f, Prop) and f.name == RESERVED_PROP:
        return False
    if isinstance(f, Not):
        inner = _value(f.operand, chosen)
        return None if inner is None else not inner
    if isinstance(f, And):
        left, right = _value(f.left, chosen), _value(f.right, chosen)
        if left is False or right is False:
            return False
        if left is None or right is None:
            return None
        return True
    return None


def _options(f: Formula, chosen: dict[Formula, bool], agents: int) -> tuple[bool, ...]:
    if isinstance(f, Prop):
        return (False,) if f.name == RESERVED_PROP else (False, True)
    if isinstance(f, And):
        return (bool(_value(f.left, chosen)) and bool(_value(f.right, chosen)),)
    if isinstance(f, Know):
        return (False,) if _value(f.operand, chosen) is False else (False, True)
    if isinstance(f, Everyone):
        forced = all(_value(Know(j, f.operand), chosen) for j in range(1, agents + 1))
        if isinstance(f.operand, Common) and _value(f.operand, chosen) and not forced:
            return ()
        return (forced,)
    if isinstance(f, Common):
        return (False,) if _value(f.operand, chosen) is False else (False, True)
    if isinstance(f, Next):
        return (False, True)
    if isinstance(f, Until):
        if _value(f.right, chosen):
            return (True,)
        if _value(f.left, chosen) is False:
            return (False,)
        return (False, True)
    raise UnsupportedFormulaError(f"cannot build atoms over {f!r}")


def _complete(closure: ClosureSet, chosen: dict[Formula, bool]) -> Atom:
    members = frozenset(f for f in closure.formulas if _value(f, chosen))
    return Atom(members, closure)


def iter_atoms(closure: ClosureSet) -> Iterator[Atom]:
    order = _decision_order(closure)
    chosen: dict[Formula, bool] = {}

    def extend(position: int) -> Iterator[Atom]:
        if position == len(order):
            yield _complete(closure, chosen)
            return
        f = order[position]
        for option in _options(f, chosen, closure.agents):
            chosen[f] = option
            yield from extend(position + 1)
        chosen.pop(f, None)

    yield from extend(0)


def atoms_of(closure: ClosureSet, cap: int = DEFAULT_CLOSURE_CAP) -> list[Atom]:
    """All atoms of the closure in a fixed order.

    Local consistency stands in for provable consistency: conjunctions
    decompose, K_i phi implies phi, E phi holds iff every K_j phi does,
    C phi implies phi and E C phi, and an until is decided by its
    one-step unfolding as far as the atom itself can tell.
    """
    atoms: list[Atom] = []
    for atom in iter_atoms(closure):
        atoms.append(atom)
        if len(atoms) > cap:
            raise ClosureLimitError(len(atoms), cap, "atoms")
    logger.debug("%s atoms over a closure of %s formulas", len(atoms), len(closure))
    return atoms


def locally_consistent(members: frozenset[Formula], closure: ClosureSet) -> bool:
    """Check a full assignment against the local rules directly."""
    atom = Atom(frozenset(members), closure)
    for f in closure.formulas:
        value = f in members
        if isinstance(f, Not):
            if value == (atom.holds(f.operand) is True):
                return False
        elif isinstance(f, Prop):
            if f.name == RESERVED_PROP and value:
                return False
        elif isinstance(f, And):
            if value != (atom.holds(f.left) is True and atom.holds(f.right) is True):
                return False
        elif isinstance(f, Know):
            if value and atom.holds(f.operand) is False:
                return False
        elif isinstance(f, Everyone):
            if value != all(atom.holds(Know(j, f.operand)) is True for j in range(1, closure.agents + 1)):
                return False
        elif isinstance(f, Common):
            if value and (atom.holds(f.operand) is False or atom.holds(Everyone(f)) is False):
                return False
        elif isinstance(f, Until):
            if atom.holds(f.right) and not value:
                return False
            if value and not atom.holds(f.right) and atom.holds(f.left) is False:
                return False
    return True
