"""Bounded counterexample search for a formula.

The pool is searched in a fixed order: shipped fixtures, then every
tiny unclocked system up to the enumeration bounds, then seeded random
systems. A hit is re-evaluated before it is returned.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import Iterator

from ..logic.formula import RESERVED_PROP, Formula, max_agent, props_of, to_text
from ..systems.evaluator import TruthTable, evaluate, valid_in_system
from ..systems.fixtures import FIXTURES
from ..systems.model import Cell, LassoSystem, Point, RunTemplate, run_names
from .generator import GeneratorConfig, generate_system, seed_for

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FalsifyBounds:
    runs: int = 3
    window: int = 4
    agents: int = 2
    samples: int = 2000
    enumerate_runs: int = 2
    enumerate_window: int = 2
    alphabet: int = 2
    run_templates: int = 256


@dataclass(frozen=True)
class Falsification:
    system: LassoSystem
    point: Point
    source: str

    def render_text(self, f: Formula) -> str:
        return f"{to_text(f)} fails at {self.system.point_label(self.point)} ({self.source})"


def _formula_props(f: Formula) -> tuple[str, ...]:
    return tuple(sorted(props_of(f) - {RESERVED_PROP}))


def _fixture_pool(f: Formula) -> Iterator[tuple[LassoSystem, str]]:
    for name, build in FIXTURES.items():
        system = build()
        if system.agents >= max_agent(f):
            yield system, f"fixture:{name}"


def enumerate_systems(
    props: tuple[str, ...], agents: int, bounds: FalsifyBounds
) -> Iterator[LassoSystem]:
    """Unclocked systems with one environment token, smallest first.

    Runs are drawn as multisets of run templates, so permuted copies of a
    system are skipped. Shapes with too many templates are skipped whole.
    """
    letters = [chr(ord("a") + k) for k in range(bounds.alphabet)]
    valuations = [
        frozenset(p for p, on in zip(props, bits) if on) for bits in product((False, True), repeat=len(props))
    ]
    cells = [Cell("e", locals_, val) for locals_ in product(letters, repeat=agents) for val in valuations]
    for window in range(1, bounds.enumerate_window + 1):
        if len(cells) ** window > bounds.run_templates:
            logger.debug("skipping window %s: %s run templates", window, len(cells) ** window)
            continue
        templates = list(product(cells, repeat=window))
        for prefix_len in range(window):
            for count in range(1, bounds.enumerate_runs + 1):
                for chosen in combinations_with_replacement(templates, count):
                    runs = tuple(RunTemplate(tuple(run), name) for run, name in zip(chosen, run_names(count)))
                    yield LassoSystem(agents, False, prefix_len, window - prefix_len, runs, frozenset(props))


def _random_pool(f: Formula, bounds: FalsifyBounds, seed: int) -> Iterator[LassoSystem]:
    agents = max(1, max_agent(f))
    props = _formula_props(f) or ("p",)
    for k in range(bounds.samples):
        config = GeneratorConfig(
            target=frozenset({"sync"}) if k % 2 else frozenset(),
            runs=bounds.runs,
            window=bounds.window,
            agents=max(agents, bounds.agents),
            props=props,
            alphabet=bounds.alphabet,
            seed=seed_for(seed, "falsify", k),
        )
        yield generate_system(config)


def _check(system: LassoSystem, f: Formula, source: str) -> Falsification | None:
    verdict = valid_in_system(system, f, TruthTable(system))
    if verdict.valid:
        return None
    point = verdict.counterexample
    if evaluate(system, point, f):
        logger.error("discarding %s: re-evaluation disagrees at %s", source, point)
        return None
    return Falsification(system, point, source)


def falsify(
    f: Formula,
    bounds: FalsifyBounds | None = None,
    seed: int = 0,
    include_fixtures: bool = True,
) -> Falsification | None:
    """First counterexample in search order, or None when the pool is exhausted."""
    bounds = bounds or FalsifyBounds()
    agents = max(1, max_agent(f))
    if include_fixtures:
        for system, source in _fixture_pool(f):
            found = _check(system, f, source)
            if found is not None:
                return found
    examined = 0
    for system in enumerate_systems(_formula_props(f), agents, bounds):
        examined += 1
        found = _check(system, f, "enumeration")
        if found is not None:
            logger.info("enumeration found a counterexample after %s systems", examined)
            return found
    for k, system in enumerate(_random_pool(f, bounds, seed)):
        found = _check(system, f, f"random:{k}")
        if found is not None:
            return found
    logger.info("no counterexample for %s within bounds", to_text(f))
    return None
