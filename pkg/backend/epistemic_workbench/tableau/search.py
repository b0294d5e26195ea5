"""Brute-force search for small models, used to corroborate tableau verdicts.

A candidate is a frame: run count, window, prefix length and one
partition of the window slots per agent (the agent's local states, named
by first occurrence). Every valuation of the formula's propositions over
the frame is checked at once by evaluating the formula on bitsets whose
bit v stands for valuation number v. Swapping two runs gives an
isomorphic frame, so only the smaller of the two is examined.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product

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
    agents_of,
    children,
    max_agent,
    mentions_common,
    props_of,
    subformulas,
    to_text,
)
from ..systems.model import Cell, LassoSystem, Point, RunTemplate, run_names

logger = logging.getLogger(__name__)

DEFAULT_SEARCH_BUDGET = 2**18
WORD_BITS = 16
CACHE_LIMIT = 50_000

Labels = tuple[int, ...]


@dataclass(frozen=True)
class SearchOutcome:
    system: LassoSystem | None
    point: Point | None
    examined: int
    truncated: bool

    @property
    def found(self) -> bool:
        return self.system is not None

    @property
    def complete(self) -> bool:
        """True when every frame within the bounds was examined."""
        return not self.found and not self.truncated

    def render_text(self) -> str:
        if self.found:
            return f"bounded search found a model: {self.system.point_label(self.point)}"
        if self.truncated:
            return f"bounded search: inconclusive, budget ran out after {self.examined} candidates"
        return f"bounded search: no model among {self.examined} candidates"


def _growth_strings(n: int) -> list[Labels]:
    """Set partitions of range(n) as restricted growth strings."""
    found: list[Labels] = []

    def extend(prefix: list[int], top: int) -> None:
        if len(prefix) == n:
            found.append(tuple(prefix))
            return
        for label in range(top + 2):
            prefix.append(label)
            extend(prefix, max(top, label))
            prefix.pop()

    extend([], -1)
    return found


def _relabel(labels: Labels, keys: list[int]) -> Labels:
    """Rename labels by first occurrence, separately within each key group."""
    seen: dict[tuple[int, int], int] = {}
    counters: dict[int, int] = {}
    result = []
    for label, key in zip(labels, keys):
        if (key, label) not in seen:
            seen[(key, label)] = counters.get(key, 0)
            counters[key] = seen[(key, label)] + 1
        result.append(seen[(key, label)])
    return tuple(result)


class _Frames:
    """Slot layout and agent partitions for one (runs, window) size."""

    def __init__(self, count: int, width: int, clocked: bool):
        self.count = count
        self.width = width
        self.clocked = clocked
        self.slots = count * width
        # clocked agents only confuse slots at the same window cell
        self.keys = [slot % width if clocked else 0 for slot in range(self.slots)]
        if clocked:
            per_column = _growth_strings(count)
            self.partitions = [
                tuple(columns[slot % width][slot // width] for slot in range(self.slots))
                for columns in product(per_column, repeat=width)
            ]
        else:
            self.partitions = _growth_strings(self.slots)
        self.blocks = {labels: self._blocks(labels) for labels in self.partitions}
        swap = [(count - 1 - slot // width) * width + slot % width for slot in range(self.slots)]
        self.mirror = {labels: self._swapped(labels, swap) for labels in self.partitions}

    def _blocks(self, labels: Labels) -> list[list[int]]:
        grouped: dict[tuple[int, int], list[int]] = {}
        for slot, label in enumerate(labels):
            grouped.setdefault((self.keys[slot], label), []).append(slot)
        return list(grouped.values())

    def _swapped(self, labels: Labels, swap: list[int]) -> Labels:
        moved = [0] * self.slots
        for slot, label in enumerate(labels):
            moved[swap[slot]] = label
        return _relabel(tuple(moved), self.keys)

    def successors(self, prefix_len: int) -> list[int]:
        nxt = []
        for slot in range(self.slots):
            run, cell = divmod(slot, self.width)
            following = cell + 1 if cell + 1 < self.width else prefix_len
            nxt.append(run * self.width + following)
        return nxt


def _bit_pattern(bit: int, total: int) -> int:
    """Integer whose v-th bit is bit `bit` of v, for v below 2**total."""
    span = 1 << bit
    pattern = ((1 << span) - 1) << span
    period = span * 2
    size = 1 << total
    while period < size:
        pattern |= pattern << period
        period *= 2
    return pattern


class _BitEvaluator:
    """Truth of every subformula at every slot, as valuation bitsets.

    Nodes are addressed by their position in bottom-up order. A node whose
    value depends on fewer agents than the search varies is cached per
    (prefix, partitions of its agents) until the next reset.
    """

    def __init__(self, psi: Formula, agents: int, relevant: tuple[int, ...], props: list[str]):
        self.agents = agents
        self.relevant = relevant
        self.props = props
        self.order = list(dict.fromkeys(reversed(list(subformulas(psi)))))
        position = {node: index for index, node in enumerate(self.order)}
        self.kids = [tuple(position[child] for child in children(node)) for node in self.order]
        self.depends: list[tuple[tuple[int, ...], bool]] = []
        everyone = tuple(range(1, agents + 1))
        for index, node in enumerate(self.order):
            if isinstance(node, Know):
                own: tuple[int, ...] = (node.agent,)
            elif isinstance(node, (Everyone, Common)):
                own = everyone
            else:
                own = ()
            temporal = isinstance(node, (Next, Until))
            for kid in self.kids[index]:
                kid_agents, kid_temporal = self.depends[kid]
                own = own + kid_agents
                temporal = temporal or kid_temporal
            self.depends.append((tuple(sorted(set(own))), temporal))
        self._cache: dict[tuple, list[int]] = {}

    def reset(self) -> None:
        self._cache.clear()

    def truth(
        self,
        frames: _Frames,
        prefix_len: int,
        partitions: dict[int, Labels],
        prop_masks: list[list[int]],
        full: int,
    ) -> list[int]:
        slots = frames.slots
        values: list[list[int]] = []
        nxt = frames.successors(prefix_len)
        blocks = {agent: frames.blocks[labels] for agent, labels in partitions.items()}
        components: list[list[int]] | None = None
        for index, node in enumerate(self.order):
            agents, temporal = self.depends[index]
            kids = [values[kid] for kid in self.kids[index]]
            key = None
            if len(agents) < len(self.relevant):
                key = (index, prefix_len if temporal else None, tuple(partitions[a] for a in agents))
                cached = self._cache.get(key)
                if cached is not None:
                    values.append(cached)
                    continue
            if isinstance(node, Prop):
                if node.name == RESERVED_PROP:
                    column = [0] * slots
                else:
                    k = self.props.index(node.name)
                    column = [prop_masks[slot][k] for slot in range(slots)]
            elif isinstance(node, Not):
                column = [full ^ x for x in kids[0]]
            elif isinstance(node, And):
                column = [x & y for x, y in zip(kids[0], kids[1])]
            elif isinstance(node, Know):
                column = _know(blocks[node.agent], kids[0], slots)
            elif isinstance(node, Everyone):
                column = [full] * slots
                for agent in range(1, self.agents + 1):
                    known = _know(blocks[agent], kids[0], slots)
                    column = [x & y for x, y in zip(column, known)]
            elif isinstance(node, Common):
                if components is None:
                    components = _components(blocks, slots)
                column = _know(components, kids[0], slots)
            elif isinstance(node, Next):
                column = [kids[0][nxt[slot]] for slot in range(slots)]
            elif isinstance(node, Until):
                left, right = kids
                column = list(right)
                for _ in range(frames.width):
                    column = [right[s] | (left[s] & column[nxt[s]]) for s in range(slots)]
            else:
                raise ValueError(f"cannot search models for {to_text(node)}")
            values.append(column)
            if key is not None:
                if len(self._cache) >= CACHE_LIMIT:
                    self._cache.clear()
                self._cache[key] = column
        return values[-1]


def _know(groups: list[list[int]], inner: list[int], slots: int) -> list[int]:
    column = [0] * slots
    for group in groups:
        verdict = inner[group[0]]
        for slot in group[1:]:
            verdict &= inner[slot]
        for slot in group:
            column[slot] = verdict
    return column


def _components(blocks: dict[int, list[list[int]]], slots: int) -> list[list[int]]:
    parent = list(range(slots))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for groups in blocks.values():
        for group in groups:
            for slot in group[1:]:
                parent[find(slot)] = find(group[0])
    grouped: dict[int, list[int]] = {}
    for slot in range(slots):
        grouped.setdefault(find(slot), []).append(slot)
    return list(grouped.values())


def _build_system(
    frames: _Frames,
    prefix_len: int,
    agents: int,
    partitions: dict[int, Labels],
    props: list[str],
    valuation: int,
) -> LassoSystem:
    templates = []
    for run, name in enumerate(run_names(frames.count)):
        cells = []
        for cell in range(frames.width):
            slot = run * frames.width + cell
            cores = tuple(f"c{partitions[agent][slot] if agent in partitions else 0}" for agent in range(1, agents + 1))
            base = slot * len(props)
            true = frozenset(name for k, name in enumerate(props) if valuation >> (base + k) & 1)
            cells.append(Cell("e", cores, true))
        templates.append(RunTemplate(tuple(cells), name))
    return LassoSystem(agents, frames.clocked, prefix_len, frames.width - prefix_len, tuple(templates), frozenset(props))


def bounded_model_search(
    psi: Formula,
    runs: int = 2,
    window: int = 3,
    agents: int | None = None,
    budget: int = DEFAULT_SEARCH_BUDGET,
    clocked: bool = False,
) -> SearchOutcome:
    """Try every system up to the given size, smallest windows first.

    ``examined`` counts frames; each frame covers every valuation of the
    propositions of psi. ``truncated`` is set when the budget ran out
    before the bounds were covered, in which case finding nothing says
    nothing. Agents psi never mentions keep a single local state, and a
    formula without temporal operators is only tried with prefix 0.
    """
    m = max(agents or 0, max_agent(psi), 1)
    props = sorted(name for name in props_of(psi) if name != RESERVED_PROP)
    if mentions_common(psi):
        relevant = tuple(range(1, m + 1))
    else:
        relevant = tuple(sorted(agents_of(psi)))
    temporal = any(isinstance(node, (Next, Until)) for node in subformulas(psi))
    evaluator = _BitEvaluator(psi, m, relevant, props)
    examined = 0
    for width in range(1, window + 1):
        for count in range(1, runs + 1):
            frames = _Frames(count, width, clocked)
            total = frames.slots * len(props)
            word = min(total, WORD_BITS)
            size = 1 << word
            full = (1 << size) - 1
            patterns = [_bit_pattern(bit, word) for bit in range(word)]
            for chunk in range(1 << (total - word)):
                evaluator.reset()
                prop_masks = []
                for slot in range(frames.slots):
                    row = []
                    for k in range(len(props)):
                        bit = slot * len(props) + k
                        if bit < word:
                            row.append(patterns[bit])
                        else:
                            row.append(full if chunk >> (bit - word) & 1 else 0)
                    prop_masks.append(row)
                prefixes = range(width) if temporal else (0,)
                for prefix_len in prefixes:
                    for chosen in product(frames.partitions, repeat=len(relevant)):
                        if count > 1 and tuple(frames.mirror[labels] for labels in chosen) < chosen:
                            continue
                        if examined >= budget:
                            logger.info("model search for %s stopped after %s candidates", to_text(psi), examined)
                            return SearchOutcome(None, None, examined, True)
                        examined += 1
                        partitions = dict(zip(relevant, chosen))
                        column = evaluator.truth(frames, prefix_len, partitions, prop_masks, full)
                        for slot, mask in enumerate(column):
                            if mask:
                                low = (mask & -mask).bit_length() - 1
                                valuation = (chunk << word) | low
                                system = _build_system(frames, prefix_len, m, partitions, props, valuation)
                                point = Point(slot // frames.width, slot % frames.width)
                                return SearchOutcome(system, point, examined, False)
    logger.info("no model for %s among %s candidates", to_text(psi), examined)
    return SearchOutcome(None, None, examined, False)
