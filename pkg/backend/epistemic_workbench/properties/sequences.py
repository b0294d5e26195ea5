"""Local-state sequences and canonical lasso descriptors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Generic, Hashable, Sequence, TypeVar

from ..logic.closure import absorb
from ..systems.model import LassoSystem

T = TypeVar("T", bound=Hashable)


class _Nothing:
    def __repr__(self) -> str:
        return "<nothing>"


_NOTHING = _Nothing()


@dataclass(frozen=True)
class Lasso(Generic[T]):
    """head followed by loop repeated forever; an empty loop means a finite word."""

    head: tuple[T, ...]
    loop: tuple[T, ...] = ()

    @property
    def finite(self) -> bool:
        return not self.loop

    def prefix(self, length: int) -> tuple[T, ...]:
        if self.finite:
            return self.head[:length]
        items = list(self.head[:length])
        k = 0
        while len(items) < length:
            items.append(self.loop[k % len(self.loop)])
            k += 1
        return tuple(items)

    def __str__(self) -> str:
        head = " ".join(map(str, self.head))
        if self.finite:
            return f"<{head}>"
        loop = " ".join(map(str, self.loop))
        return f"<{head}({loop})w>" if head else f"<({loop})w>"


def _primitive_root(loop: tuple[T, ...]) -> tuple[T, ...]:
    n = len(loop)
    for p in range(1, n + 1):
        if n % p == 0 and loop[:p] * (n // p) == loop:
            return loop[:p]
    return loop


def canonical_lasso(head: Sequence[T], loop: Sequence[T]) -> Lasso[T]:
    """Shortest loop, rolled back into the head as far as it goes."""
    head, loop = tuple(head), tuple(loop)
    if not loop:
        return Lasso(head, ())
    loop = _primitive_root(loop)
    while head and head[-1] == loop[-1]:
        loop = (head[-1],) + loop[:-1]
        head = head[:-1]
    return Lasso(head, loop)


def canonical_absorbed_lasso(head: Sequence[T], loop: Sequence[T]) -> Lasso[T]:
    """The word head.loop^w with consecutive repetitions omitted."""
    word = tuple(head) + tuple(loop)
    if not loop:
        return Lasso(absorb(word), ())
    start = len(head)
    emitted: list[T] = []
    seen: dict[tuple[int, object], int] = {}
    position, previous = 0, _NOTHING
    while (position, previous) not in seen:
        seen[(position, previous)] = len(emitted)
        symbol = word[position]
        if symbol != previous:
            emitted.append(symbol)
        previous = symbol
        position = position + 1 if position + 1 < len(word) else start
    cut = seen[(position, previous)]
    return canonical_lasso(emitted[:cut], emitted[cut:])


def cell_lasso(system: LassoSystem, n: int) -> tuple[list[int], list[int]]:
    """Window cells visited from time n, split into head and loop."""
    start = system.canonical_position(n)
    if start < system.prefix_len:
        return list(range(start, system.prefix_len)), list(range(system.prefix_len, system.window))
    loop = list(range(start, system.window)) + list(range(system.prefix_len, start))
    return [], loop


def local_state_sequence(system: LassoSystem, run: int, agent: int, n: int) -> tuple:
    """Agent's local states over r(0..n) with consecutive repetitions omitted.

    Clocked systems carry the time in each local state, so nothing is omitted.
    """
    if system.clocked:
        return tuple((t, system.core(run, t, agent)) for t in range(n + 1))
    return absorb(system.core(run, t, agent) for t in range(n + 1))


def future_local_sequence(system: LassoSystem, run: int, agent: int, n: int):
    """Canonical descriptor of the future local-state sequence at (r, n).

    Unclocked: the absorbed core word as a lasso. Clocked: the pair
    (n, core lasso), since timestamps make every step distinct.
    """
    head_cells, loop_cells = cell_lasso(system, n)
    cells = system.runs[run].cells
    head = [cells[c].core(agent) for c in head_cells]
    loop = [cells[c].core(agent) for c in loop_cells]
    if system.clocked:
        return (n, canonical_lasso(head, loop))
    return canonical_absorbed_lasso(head, loop)
