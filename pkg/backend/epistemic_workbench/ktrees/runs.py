"""Runs derived from state sequences, one kind per class construction.

Each kind fixes what an agent's local state at time n records about the
agent's current information along the sequence:

  pr          the history up to n, repetitions absorbed
  pr_sync     the full history up to n (clocked)
  nl          the future from n, repetitions absorbed
  nl_sync     the full future from n (clocked)
  nl_pr       history and absorbed future
  nl_pr_sync  full history and full future (clocked)

Histories stop growing at the derivation horizon; only times below it
are faithful for the kinds that record them.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from ..errors import SequenceError
from ..logic.closure import absorb
from ..logic.formula import RESERVED_PROP, Prop, props_of
from ..properties.sequences import Lasso, canonical_absorbed_lasso, canonical_lasso
from ..systems.model import Cell, LassoSystem, from_lassos, run_names
from ..tableau.premodel import PreModel

logger = logging.getLogger(__name__)

RUN_KINDS = ("pr", "pr_sync", "nl", "nl_pr", "nl_sync", "nl_pr_sync")
CLOCKED_KINDS = frozenset({"pr_sync", "nl_sync", "nl_pr_sync"})
HISTORY_KINDS = frozenset({"pr", "pr_sync", "nl_pr", "nl_pr_sync"})
FUTURE_KINDS = frozenset({"nl", "nl_sync", "nl_pr", "nl_pr_sync"})


@dataclass(frozen=True)
class DerivedRun:
    """States along the run and, per position, each agent's local state.

    Positions split into head and loop like the state lasso they came from.
    """

    kind: str
    head: tuple[int, ...]
    loop: tuple[int, ...]
    locals: tuple[tuple[str, ...], ...]
    horizon: int
    clocked: bool
    truncated: bool

    @property
    def states(self) -> tuple[int, ...]:
        return self.head + self.loop

    def local_states(self, agent: int) -> tuple[str, ...]:
        return tuple(row[agent - 1] for row in self.locals)


def _check_sequence(pm: PreModel, word: Sequence[int]) -> None:
    index = pm.state(word[0]).index
    for a, b in zip(word, word[1:]):
        if pm.state(b).index != index:
            raise SequenceError("a derived run stays within one index level")
        if a != b and b not in pm.successors.get(a, ()):
            raise SequenceError(f"s{a} -> s{b} is not a step")


def _history(tokens: Sequence[str], clocked: bool) -> str:
    return "#".join(tokens if clocked else absorb(tokens))


def _future(head: Sequence[str], loop: Sequence[str], clocked: bool) -> str:
    lasso = canonical_lasso(head, loop) if clocked else canonical_absorbed_lasso(head, loop)
    return str(lasso)


def derive_run(pm: PreModel, seq: Lasso[int], kind: str, horizon: int) -> DerivedRun:
    """Derive one run from a sequence of states within one index level.

    Consecutive states must be equal or related by the step relation.
    History kinds accept a finite sequence and stutter on its last state;
    future kinds need the loop.
    """
    if kind not in RUN_KINDS:
        raise ValueError(f"kind must be one of {RUN_KINDS}, got {kind!r}")
    if horizon < 1:
        raise ValueError("the derivation horizon must be at least 1")
    if not seq.head and not seq.loop:
        raise SequenceError("a derived run needs at least one state")
    clocked = kind in CLOCKED_KINDS
    if kind in FUTURE_KINDS and seq.finite:
        raise SequenceError(f"{kind} runs need an infinite sequence")
    _check_sequence(pm, seq.prefix(len(seq.head) + 2 * len(seq.loop) + 1))

    if kind in FUTURE_KINDS:
        head_len = max(horizon - 1, len(seq.head)) if kind in HISTORY_KINDS else len(seq.head)
        word = seq.prefix(head_len + len(seq.loop))
        loop_len = len(seq.loop)
    else:
        head_len, loop_len = horizon - 1, 1
        word = seq.prefix(horizon)
        word = word + (word[-1],) * (horizon - len(word))
    truncated = kind in HISTORY_KINDS and (not seq.finite or len(seq.head) > horizon)

    rows = []
    for position in range(head_len + loop_len):
        row = []
        for agent in range(1, pm.agents + 1):
            parts = []
            if kind in HISTORY_KINDS:
                upto = min(position, horizon - 1)
                parts.append(_history([pm.information_token(s, agent) for s in word[: upto + 1]], clocked))
            if kind in FUTURE_KINDS:
                parts.append(_future_at(pm, seq, position, agent, clocked))
            row.append("|".join(parts))
        rows.append(tuple(row))
    return DerivedRun(kind, tuple(word[:head_len]), tuple(word[head_len:]), tuple(rows), horizon, clocked, truncated)


def _future_at(pm: PreModel, seq: Lasso[int], position: int, agent: int, clocked: bool) -> str:
    def tokens(states: Sequence[int]) -> list[str]:
        return [pm.information_token(s, agent) for s in states]

    if position < len(seq.head):
        return _future(tokens(seq.head[position:]), tokens(seq.loop), clocked)
    shift = (position - len(seq.head)) % len(seq.loop)
    return _future([], tokens(seq.loop[shift:] + seq.loop[:shift]), clocked)


def _valuation(pm: PreModel, s: int) -> frozenset[str]:
    atom = pm.state(s).atom
    return frozenset(name for name in props_of(pm.psi) if name != RESERVED_PROP and Prop(name) in atom)


def derived_system(pm: PreModel, runs: Sequence[DerivedRun]) -> LassoSystem:
    """The system whose runs carry the derived local states and the states' valuations."""
    if not runs:
        raise SequenceError("a derived system needs at least one run")
    if len({run.clocked for run in runs}) != 1:
        raise SequenceError("derived runs must agree on being clocked")
    lassos = []
    for run in runs:
        cells = [Cell(f"s{s}", row, _valuation(pm, s)) for s, row in zip(run.states, run.locals)]
        lassos.append((cells[: len(run.head)], cells[len(run.head) :]))
    props = {name for name in props_of(pm.psi) if name != RESERVED_PROP}
    system = from_lassos(pm.agents, runs[0].clocked, lassos, props, run_names(len(lassos)))
    logger.info("derived %s %s runs, window %s", len(runs), runs[0].kind, system.window)
    return system
