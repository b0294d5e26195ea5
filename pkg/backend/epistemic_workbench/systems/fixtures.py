"""Named systems shipped with the workbench."""

from __future__ import annotations

from typing import Callable

from .model import Cell, LassoSystem, RunTemplate


def fixture_nl_prime() -> LassoSystem:
    """Two runs sharing their initial state; only uis holds.

    r1 has cores a, b, c, b, c, ... and r2 has a, c, d, c, d, ...; p holds
    exactly at core a and q exactly at core b. No learning' fails from (r1,0):
    core b never occurs on r2. See fixture_nl_prime_witness for the variant
    that separates no learning' from no learning.
    """

    def cell(core: str) -> Cell:
        valuation = {"a": {"p"}, "b": {"q"}}.get(core, set())
        return Cell("se", (core,), frozenset(valuation))

    return LassoSystem(
        agents=1,
        clocked=False,
        prefix_len=1,
        period=2,
        runs=(
            RunTemplate(tuple(cell(core) for core in "abc"), "r1"),
            RunTemplate(tuple(cell(core) for core in "acd"), "r2"),
        ),
        props=frozenset({"p", "q"}),
    )


def fixture_nl_prime_witness() -> LassoSystem:
    """Variant whose second run alternates c and b: no learning' holds, no learning fails.

    Both runs visit the same cores after time 0, so every future local
    state of one run recurs in the other, yet the orders differ.
    """
    base = fixture_nl_prime()
    first, second = base.runs
    swapped = (second.cells[0], second.cells[1], first.cells[1])
    return LassoSystem(
        agents=1,
        clocked=False,
        prefix_len=1,
        period=2,
        runs=(first, RunTemplate(swapped, "r2")),
        props=base.props,
    )


FIXTURES: dict[str, Callable[[], LassoSystem]] = {
    "fixture_nl_prime": fixture_nl_prime,
    "fixture_nl_prime_witness": fixture_nl_prime_witness,
}
