"""Seeded systems and formulas for the sweep tests."""

import random

import pytest

from epistemic_workbench.axioms import GeneratorConfig, generate_system
from epistemic_workbench.axioms.generator import seed_for
from epistemic_workbench.axioms.random_formulas import FormulaBounds, random_formula

TARGETS = [(), ("pr",), ("nl",), ("sync",), ("uis",), ("pr", "sync"), ("nl", "pr"), ("nl", "sync")]


def sweep_sizes(full, quick=8):
    """A quick slice for the default run and the full count behind the acceptance marker."""
    return [pytest.param(quick, id="quick"), pytest.param(full, marks=pytest.mark.acceptance, id="full")]


def seeded_systems(label, count, runs=3, window=4):
    """Generated systems cycling through class targets and one to three agents."""
    for index in range(count):
        config = GeneratorConfig(
            target=frozenset(TARGETS[index % len(TARGETS)]),
            runs=runs,
            window=window,
            agents=1 + index % 3,
            seed=seed_for(label, index),
        )
        yield index, generate_system(config)


def seeded_formulas(label, index, count, agents, depth=3, allow_common=True):
    rng = random.Random(seed_for(label, "formulas", index))
    bounds = FormulaBounds(depth=depth, agents=agents, allow_common=allow_common)
    return [random_formula(rng, bounds) for _ in range(count)]
