"""Finite lasso representation of interpreted systems."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Iterable, Sequence

from ..errors import SystemFormatError


@dataclass(frozen=True)
class Cell:
    """One global state plus the propositions true at it."""

    env: str
    locals: tuple[str, ...]
    valuation: frozenset[str] = frozenset()

    def core(self, agent: int) -> str:
        return self.locals[agent - 1]


@dataclass(frozen=True)
class RunTemplate:
    cells: tuple[Cell, ...]
    name: str = ""


@dataclass(frozen=True, order=True)
class Point:
    run: int
    time: int


@dataclass(frozen=True)
class LassoSystem:
    """Runs as eventually periodic windows sharing prefix length and period.

    Time n denotes cell n inside the window and cell P + ((n - P) mod Q)
    beyond it. In clocked systems the effective local state of agent i
    at (r, n) is (n, core); otherwise it is the core alone.
    """

    agents: int
    clocked: bool
    prefix_len: int
    period: int
    runs: tuple[RunTemplate, ...]
    props: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.agents < 1:
            raise SystemFormatError("a system needs at least one agent")
        if self.prefix_len < 0 or self.period < 1:
            raise SystemFormatError("prefix length must be >= 0 and period >= 1")
        if not self.runs:
            raise SystemFormatError("a system needs at least one run")
        names = [run.name for run in self.runs if run.name]
        if len(set(names)) != len(names):
            raise SystemFormatError(f"run names must be unique, got {names}")
        for run in self.runs:
            if len(run.cells) != self.window:
                raise SystemFormatError(
                    f"run {run.name!r} has {len(run.cells)} cells, expected {self.window}"
                )
            for cell in run.cells:
                if len(cell.locals) != self.agents:
                    raise SystemFormatError(
                        f"run {run.name!r} has a cell with {len(cell.locals)} local states, expected {self.agents}"
                    )
                unknown = cell.valuation - self.props
                if unknown:
                    raise SystemFormatError(f"run {run.name!r} values unknown propositions {sorted(unknown)}")

    @property
    def window(self) -> int:
        return self.prefix_len + self.period

    def canonical_position(self, n: int) -> int:
        if n < 0:
            raise ValueError("time must be non-negative")
        if n < self.window:
            return n
        return self.prefix_len + (n - self.prefix_len) % self.period

    def next_cell(self, cell: int) -> int:
        return cell + 1 if cell + 1 < self.window else self.prefix_len

    def cell(self, run: int, n: int) -> Cell:
        return self.runs[run].cells[self.canonical_position(n)]

    def core(self, run: int, n: int, agent: int) -> str:
        return self.cell(run, n).core(agent)

    def local_state(self, point: Point, agent: int) -> tuple[int, str] | str:
        core = self.core(point.run, point.time, agent)
        return (point.time, core) if self.clocked else core

    def run_index(self, name: str) -> int:
        for index, run in enumerate(self.runs):
            if run.name == name:
                return index
        raise SystemFormatError(f"no run named {name!r}")

    def points(self) -> list[Point]:
        """One point per (run, window cell), in (run, cell) order."""
        return [Point(r, c) for r in range(len(self.runs)) for c in range(self.window)]

    def tokens(self) -> set[str]:
        found: set[str] = set()
        for run in self.runs:
            for cell in run.cells:
                found.add(cell.env)
                found.update(cell.locals)
        return found

    def point_label(self, point: Point) -> str:
        return f"({self.runs[point.run].name},{point.time})"


def canonical_position(system: LassoSystem, n: int) -> int:
    return system.canonical_position(n)


def indistinguishable(system: LassoSystem, a: Point, b: Point, agent: int) -> bool:
    if system.clocked and a.time != b.time:
        return False
    return system.core(a.run, a.time, agent) == system.core(b.run, b.time, agent)


def run_names(count: int) -> list[str]:
    return [f"r{k}" for k in range(1, count + 1)]


def from_lassos(
    agents: int,
    clocked: bool,
    lassos: Sequence[tuple[Sequence[Cell], Sequence[Cell]]],
    props: Iterable[str],
    names: Sequence[str] | None = None,
) -> LassoSystem:
    """Build a system from per-run (head, loop) pairs of differing lengths.

    P is the longest head and Q the lcm of the loop lengths; every run is
    unrolled to that common window.
    """
    if not lassos:
        raise SystemFormatError("a system needs at least one run")
    if any(len(loop) == 0 for _, loop in lassos):
        raise SystemFormatError("every run needs a nonempty loop")
    prefix_len = max(len(head) for head, _ in lassos)
    period = lcm(*(len(loop) for _, loop in lassos))
    names = list(names) if names is not None else run_names(len(lassos))
    runs = []
    for (head, loop), name in zip(lassos, names):
        cells = []
        for n in range(prefix_len + period):
            if n < len(head):
                cells.append(head[n])
            else:
                cells.append(loop[(n - len(head)) % len(loop)])
        runs.append(RunTemplate(tuple(cells), name))
    return LassoSystem(agents, clocked, prefix_len, period, tuple(runs), frozenset(props))


def fresh_token(used: set[str], base: str) -> str:
    token = base
    while token in used:
        token += "'"
    return token


def uis_transform(system: LassoSystem) -> LassoSystem:
    """Prepend one shared fresh initial cell to every run.

    (I, r, n) satisfies a formula iff the result does at (r+, n + 1).
    """
    used = system.tokens()
    env = fresh_token(used, "init_e")
    local = fresh_token(used, "init")
    initial = Cell(env, tuple(local for _ in range(system.agents)), frozenset())
    runs = tuple(RunTemplate((initial,) + run.cells, run.name) for run in system.runs)
    return LassoSystem(
        system.agents,
        system.clocked,
        system.prefix_len + 1,
        system.period,
        runs,
        system.props,
    )
