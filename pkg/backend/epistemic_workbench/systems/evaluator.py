"""Truth tables for formulas over lasso systems.

Every subformula gets one boolean per (run, window cell). Until is the
least fixpoint of its one-step unfolding, knowledge quantifies over
indistinguishable cells and common knowledge over connected components
of the union of the indistinguishability relations.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from ..logic.formula import (
    And,
    Common,
    Everyone,
    Formula,
    Know,
    Meta,
    Next,
    Not,
    Prop,
    Until,
    subformulas,
    to_text,
)
from .model import LassoSystem, Point

Vector = tuple[bool, ...]


class TruthTable:
    """Lazily computed per-subformula truth vectors for one system."""

    def __init__(self, system: LassoSystem):
        self.system = system
        self.width = system.window
        self._tables: dict[Formula, Vector] = {}
        self._groups: dict[int, list[list[int]]] = {}
        self._components: list[int] | None = None

    def _slot(self, run: int, cell: int) -> int:
        return run * self.width + cell

    def _cells(self) -> range:
        return range(len(self.system.runs) * self.width)

    def groups(self, agent: int) -> list[list[int]]:
        """Indistinguishability classes of agent over window slots."""
        if agent not in self._groups:
            buckets: dict[object, list[int]] = {}
            for r, run in enumerate(self.system.runs):
                for c, cell in enumerate(run.cells):
                    key = (c, cell.core(agent)) if self.system.clocked else cell.core(agent)
                    buckets.setdefault(key, []).append(self._slot(r, c))
            self._groups[agent] = list(buckets.values())
        return self._groups[agent]

    def reachability_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self._cells())
        for agent in range(1, self.system.agents + 1):
            for group in self.groups(agent):
                head = group[0]
                graph.add_edges_from((head, other) for other in group[1:])
        return graph

    def components(self) -> list[int]:
        if self._components is None:
            labels = [0] * len(self._cells())
            graph = self.reachability_graph()
            for index, component in enumerate(nx.connected_components(graph)):
                for slot in component:
                    labels[slot] = index
            self._components = labels
        return self._components

    def _know(self, agent: int, inner: Vector) -> Vector:
        values = [False] * len(inner)
        for group in self.groups(agent):
            verdict = all(inner[slot] for slot in group)
            for slot in group:
                values[slot] = verdict
        return tuple(values)

    def _everyone(self, inner: Vector) -> Vector:
        result = [True] * len(inner)
        for agent in range(1, self.system.agents + 1):
            known = self._know(agent, inner)
            result = [a and b for a, b in zip(result, known)]
        return tuple(result)

    def _common(self, inner: Vector) -> Vector:
        labels = self.components()
        holds: dict[int, bool] = {}
        for slot, label in enumerate(labels):
            holds[label] = holds.get(label, True) and inner[slot]
        return tuple(holds[label] for label in labels)

    def common_fixpoint(self, inner: Vector) -> Vector:
        """Greatest fixpoint of X = E(inner & X), iterated until stable."""
        current: Vector = tuple(True for _ in inner)
        while True:
            updated = self._everyone(tuple(a and b for a, b in zip(inner, current)))
            if updated == current:
                return current
            current = updated

    def _next(self, inner: Vector) -> Vector:
        values = []
        for r in range(len(self.system.runs)):
            for c in range(self.width):
                values.append(inner[self._slot(r, self.system.next_cell(c))])
        return tuple(values)

    def _until(self, left: Vector, right: Vector) -> Vector:
        values = list(right)
        changed = True
        while changed:
            changed = False
            for r in range(len(self.system.runs)):
                for c in range(self.width):
                    slot = self._slot(r, c)
                    if values[slot] or not left[slot]:
                        continue
                    if values[self._slot(r, self.system.next_cell(c))]:
                        values[slot] = True
                        changed = True
        return tuple(values)

    def column(self, f: Formula) -> Vector:
        cached = self._tables.get(f)
        if cached is not None:
            return cached
        # bottom-up, children first
        order = list(dict.fromkeys(reversed(list(subformulas(f)))))
        for node in order:
            if node not in self._tables:
                self._tables[node] = self._compute(node)
        return self._tables[f]

    def _compute(self, f: Formula) -> Vector:
        get = self._tables.__getitem__
        if isinstance(f, Prop):
            return tuple(
                f.name in cell.valuation for run in self.system.runs for cell in run.cells
            )
        if isinstance(f, Not):
            return tuple(not v for v in get(f.operand))
        if isinstance(f, And):
            return tuple(a and b for a, b in zip(get(f.left), get(f.right)))
        if isinstance(f, Next):
            return self._next(get(f.operand))
        if isinstance(f, Until):
            return self._until(get(f.left), get(f.right))
        if isinstance(f, Know):
            return self._know(f.agent, get(f.operand))
        if isinstance(f, Everyone):
            return self._everyone(get(f.operand))
        if isinstance(f, Common):
            return self._common(get(f.operand))
        if isinstance(f, Meta):
            raise TypeError(f"cannot evaluate schema metavariable {f.name}")
        raise TypeError(f"not a formula: {f!r}")

    def value(self, point: Point, f: Formula) -> bool:
        cell = self.system.canonical_position(point.time)
        return self.column(f)[self._slot(point.run, cell)]

    def render_text(self, f: Formula) -> str:
        """One line per subformula with a 0/1 string per run."""
        lines = []
        for node in dict.fromkeys(reversed(list(subformulas(f)))):
            vector = self.column(node)
            cells = " ".join(
                "".join("1" if vector[self._slot(r, c)] else "0" for c in range(self.width))
                for r in range(len(self.system.runs))
            )
            lines.append(f"{cells}  {to_text(node)}")
        return "\n".join(lines)

    def to_document(self, f: Formula) -> dict[str, object]:
        names = [run.name for run in self.system.runs]
        rows = {}
        for node in dict.fromkeys(reversed(list(subformulas(f)))):
            vector = self.column(node)
            rows[to_text(node)] = {
                name: [vector[self._slot(r, c)] for c in range(self.width)] for r, name in enumerate(names)
            }
        return {"window": self.width, "runs": names, "table": rows}


def evaluate(system: LassoSystem, point: Point, f: Formula, table: TruthTable | None = None) -> bool:
    return (table or TruthTable(system)).value(point, f)


def evaluate_common(system: LassoSystem, point: Point, f: Formula) -> bool:
    """C f at the point: f holds on every slot reachable via the union of the relations."""
    table = TruthTable(system)
    return table.value(point, Common(f))


def evaluate_common_fixpoint(system: LassoSystem, point: Point, f: Formula) -> bool:
    table = TruthTable(system)
    vector = table.common_fixpoint(table.column(f))
    return vector[point.run * system.window + system.canonical_position(point.time)]


@dataclass(frozen=True)
class Validity:
    valid: bool
    counterexample: Point | None = None


def valid_in_system(system: LassoSystem, f: Formula, table: TruthTable | None = None) -> Validity:
    """Truth at every (run, cell); the first failing point in (run, cell) order otherwise."""
    table = table or TruthTable(system)
    vector = table.column(f)
    for point in system.points():
        if not vector[point.run * system.window + point.time]:
            return Validity(False, point)
    return Validity(True)


def evaluate_unrolled(system: LassoSystem, point: Point, f: Formula, horizon: int | None = None) -> bool:
    """Explicit-time evaluation over times 0..horizon-1.

    Times at or past the horizon fold back by whole periods. Until scans
    forward step by step; clocked knowledge compares times explicitly.
    """
    limit = max(horizon or 3 * system.window, system.window)
    memo: dict[tuple[Formula, int, int], bool] = {}

    def fold(n: int) -> int:
        while n >= limit:
            n -= system.period
        return n

    def core(run: int, n: int, agent: int) -> str:
        return system.core(run, n, agent)

    def related(agent: int, run: int, n: int) -> list[tuple[int, int]]:
        mine = core(run, n, agent)
        times = range(n, n + 1) if system.clocked else range(limit)
        return [
            (other, m)
            for other in range(len(system.runs))
            for m in times
            if core(other, m, agent) == mine
        ]

    def holds(g: Formula, run: int, n: int) -> bool:
        n = fold(n)
        key = (g, run, n)
        if key in memo:
            return memo[key]
        if isinstance(g, Prop):
            result = g.name in system.cell(run, n).valuation
        elif isinstance(g, Not):
            result = not holds(g.operand, run, n)
        elif isinstance(g, And):
            result = holds(g.left, run, n) and holds(g.right, run, n)
        elif isinstance(g, Next):
            result = holds(g.operand, run, n + 1)
        elif isinstance(g, Until):
            result = False
            for step in range(limit + system.period + 1):
                if holds(g.right, run, n + step):
                    result = True
                    break
                if not holds(g.left, run, n + step):
                    break
        elif isinstance(g, Know):
            result = all(holds(g.operand, other, m) for other, m in related(g.agent, run, n))
        elif isinstance(g, Everyone):
            result = all(holds(Know(i, g.operand), run, n) for i in range(1, system.agents + 1))
        elif isinstance(g, Common):
            seen = {(run, n)}
            frontier = [(run, n)]
            while frontier:
                current = frontier.pop()
                for agent in range(1, system.agents + 1):
                    for neighbour in related(agent, *current):
                        if neighbour not in seen:
                            seen.add(neighbour)
                            frontier.append(neighbour)
            result = all(holds(g.operand, other, m) for other, m in seen)
        else:
            raise TypeError(f"cannot evaluate {g!r}")
        memo[key] = result
        return result

    return holds(f, point.run, point.time)
