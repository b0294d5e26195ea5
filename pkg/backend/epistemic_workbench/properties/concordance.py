"""Concordance of point (and state) sequences.

Two sequences are concordant under a relation when both split into the
same number of nonempty consecutive intervals with every element of the
j-th interval of one related to every element of the j-th interval of
the other. The number of intervals may be infinite.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Sequence, TypeVar

import networkx as nx

from ..systems.model import LassoSystem, Point, indistinguishable

logger = logging.getLogger(__name__)

T = TypeVar("T")
Interval = tuple[int, "int | None"]


@dataclass(frozen=True)
class ConcordanceWitness:
    """Matching interval partitions, as half-open (start, stop) positions.

    ``stop`` is None for an infinite final interval. When ``repeat_from``
    is set, the blocks from that index on form a cycle that repeats
    forever, each repetition shifted by the cycle's length on each side.
    """

    s_intervals: tuple[Interval, ...]
    t_intervals: tuple[Interval, ...]
    repeat_from: int | None = None

    @property
    def blocks(self) -> int:
        return len(self.s_intervals)


@dataclass(frozen=True)
class ConcordanceResult:
    concordant: bool
    witness: ConcordanceWitness | None = None

    def __bool__(self) -> bool:
        return self.concordant


def _block_ok(s: Sequence[T], t: Sequence[T], related: Callable[[T, T], bool]) -> bool:
    return all(related(x, y) for x in s for y in t)


def _greedy(s: Sequence[T], t: Sequence[T], related: Callable[[T, T], bool]) -> ConcordanceWitness | None:
    a = b = 0
    s_blocks: list[Interval] = []
    t_blocks: list[Interval] = []
    while a < len(s) and b < len(t):
        if not related(s[a], t[b]):
            return None
        x = 1
        while a + x < len(s) and related(s[a + x], t[b]):
            x += 1
        y = 1
        while b + y < len(t) and all(related(s[k], t[b + y]) for k in range(a, a + x)):
            y += 1
        s_blocks.append((a, a + x))
        t_blocks.append((b, b + y))
        a, b = a + x, b + y
    if a == len(s) and b == len(t):
        return ConcordanceWitness(tuple(s_blocks), tuple(t_blocks))
    return None


def _exact(s: Sequence[T], t: Sequence[T], related: Callable[[T, T], bool]) -> ConcordanceWitness | None:
    """Search over (next S start, next T start) positions.

    A related rectangle with at least two rows and two columns splits into
    smaller related rectangles, so blocks of shape (x, 1) and (1, y) suffice.
    """
    goal = (len(s), len(t))
    parent: dict[tuple[int, int], tuple[int, int] | None] = {(0, 0): None}
    queue = deque([(0, 0)])
    while queue:
        a, b = queue.popleft()
        if (a, b) == goal:
            break
        if a >= len(s) or b >= len(t):
            continue
        moves = []
        x = 0
        while a + x < len(s) and related(s[a + x], t[b]):
            x += 1
            moves.append((a + x, b + 1))
        y = 1
        while b + y < len(t) and related(s[a], t[b + y]):
            y += 1
            moves.append((a + 1, b + y))
        for node in moves:
            if node not in parent:
                parent[node] = (a, b)
                queue.append(node)
    if goal not in parent:
        return None
    path = [goal]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    path.reverse()
    s_blocks = tuple((p[0], q[0]) for p, q in zip(path, path[1:]))
    t_blocks = tuple((p[1], q[1]) for p, q in zip(path, path[1:]))
    return ConcordanceWitness(s_blocks, t_blocks)


def concordant_sequences(
    s: Sequence[T], t: Sequence[T], related: Callable[[T, T], bool]
) -> ConcordanceResult:
    """Concordance of two finite nonempty sequences: greedy, then exact search."""
    if not s or not t:
        raise ValueError("concordance needs nonempty sequences")
    witness = _greedy(s, t, related)
    if witness is None:
        witness = _exact(s, t, related)
        if witness is not None:
            logger.debug("greedy concordance failed where exact search succeeded")
    return ConcordanceResult(witness is not None, witness)


@dataclass(frozen=True)
class PointSequence:
    """Points (run, start), (run, start + 1), ... up to stop inclusive, or forever."""

    run: int
    start: int
    stop: int | None = None

    @property
    def finite(self) -> bool:
        return self.stop is not None

    def points(self) -> list[Point]:
        if self.stop is None:
            raise ValueError("an infinite sequence has no point list")
        return [Point(self.run, t) for t in range(self.start, self.stop + 1)]

    def length(self) -> int | None:
        return None if self.stop is None else self.stop - self.start + 1


def concordant(system: LassoSystem, s: PointSequence, t: PointSequence, agent: int) -> ConcordanceResult:
    """Concordance of two point sequences under the agent's indistinguishability."""

    def related(x: Point, y: Point) -> bool:
        return indistinguishable(system, x, y, agent)

    if s.finite and t.finite:
        return concordant_sequences(s.points(), t.points(), related)
    return _concordant_lasso(system, s, t, related)


def _concordant_lasso(
    system: LassoSystem,
    s: PointSequence,
    t: PointSequence,
    related: Callable[[Point, Point], bool],
) -> ConcordanceResult:
    span = 2 * system.window + 1
    s_len, t_len = s.length(), t.length()

    def at(seq: PointSequence, pos: int) -> Point:
        return Point(seq.run, seq.start + pos)

    def exhausted(pos: int, length: int | None) -> bool:
        return length is not None and pos >= length

    def key(a: int, b: int) -> Hashable:
        ta, tb = s.start + a, t.start + b
        parts: list[object] = []
        for seq_len, pos, time in ((s_len, a, ta), (t_len, b, tb)):
            if seq_len is None:
                parts.append(system.canonical_position(time))
            else:
                parts.append(("at", pos))
        if system.clocked:
            parts.append(ta - tb)
        return tuple(parts)

    def tail(seq: PointSequence, pos: int, length: int | None) -> list[Point]:
        if length is not None:
            return [at(seq, k) for k in range(pos, length)]
        return [at(seq, pos + k) for k in range(system.window + 1)]

    graph = nx.DiGraph()
    representative: dict[Hashable, tuple[int, int]] = {}
    parent: dict[Hashable, tuple[Hashable, tuple[int, int]] | None] = {}
    start_key = key(0, 0)
    representative[start_key] = (0, 0)
    parent[start_key] = None
    graph.add_node(start_key)
    queue = deque([start_key])
    finished: Hashable | None = None
    final_block: tuple[Interval, Interval] | None = None

    while queue and finished is None:
        node = queue.popleft()
        a, b = representative[node]
        s_done, t_done = exhausted(a, s_len), exhausted(b, t_len)
        if s_done and t_done:
            finished = node
            break
        if s_done or t_done:
            continue
        s_tail, t_tail = tail(s, a, s_len), tail(t, b, t_len)
        # one infinite final interval pair closes the partition
        if _block_ok(s_tail, t_tail, related):
            finished = node
            final_block = ((a, s_len), (b, t_len))
            break
        moves: list[tuple[int, int]] = []
        x = 0
        while x < span and not exhausted(a + x, s_len) and related(at(s, a + x), at(t, b)):
            x += 1
            moves.append((x, 1))
        y = 1
        while y < span and not exhausted(b + y, t_len) and related(at(s, a), at(t, b + y)):
            y += 1
            moves.append((1, y))
        for dx, dy in moves:
            target = key(a + dx, b + dy)
            graph.add_edge(node, target, move=(dx, dy))
            if target not in representative:
                representative[target] = (a + dx, b + dy)
                parent[target] = (node, (dx, dy))
                queue.append(target)

    if finished is not None:
        blocks = _path_blocks(parent, representative, finished)
        if final_block is not None:
            blocks.append(final_block)
        return ConcordanceResult(True, _witness(blocks))

    # Infinitely many blocks: a reachable cycle in the block graph.
    for component in nx.strongly_connected_components(graph):
        entry = min(component, key=lambda n: representative[n])
        if len(component) == 1 and not graph.has_edge(entry, entry):
            continue
        blocks = _path_blocks(parent, representative, entry)
        repeat_from = len(blocks)
        a, b = representative[entry]
        cycle = _cycle_moves(graph, entry, component)
        for dx, dy in cycle:
            blocks.append(((a, a + dx), (b, b + dy)))
            a, b = a + dx, b + dy
        return ConcordanceResult(True, _witness(blocks, repeat_from))
    return ConcordanceResult(False)


def _path_blocks(parent, representative, node) -> list[tuple[Interval, Interval]]:
    moves: list[tuple[int, int]] = []
    while parent[node] is not None:
        node, move = parent[node]
        moves.append(move)
    moves.reverse()
    a = b = 0
    blocks = []
    for dx, dy in moves:
        blocks.append(((a, a + dx), (b, b + dy)))
        a, b = a + dx, b + dy
    return blocks


def _cycle_moves(graph: nx.DiGraph, entry, component) -> list[tuple[int, int]]:
    if graph.has_edge(entry, entry):
        return [graph.edges[entry, entry]["move"]]
    sub = graph.subgraph(component)
    for successor in sorted(sub.successors(entry), key=repr):
        path = nx.shortest_path(sub, successor, entry)
        moves = [graph.edges[entry, successor]["move"]]
        moves.extend(graph.edges[u, v]["move"] for u, v in zip(path, path[1:]))
        return moves
    return []


def _witness(blocks: list[tuple[Interval, Interval]], repeat_from: int | None = None) -> ConcordanceWitness:
    return ConcordanceWitness(
        tuple(block[0] for block in blocks),
        tuple(block[1] for block in blocks),
        repeat_from,
    )
