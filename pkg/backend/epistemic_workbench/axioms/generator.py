"""Random lasso systems that belong to a requested class by construction.

Each agent gets a random observation per window cell. Its local core is
then derived from the observations so that the class holds:

* plain: the observation itself;
* pr: the observation history, with observations constant on the loop;
* nl: the future observation word as a canonical lasso;
* pr and nl: the pair of both.

Clocked systems keep histories and futures unabsorbed, since the time
already tells points apart. uis shares cell 0 between runs (and the whole
observation sequence when futures are involved).
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass

from ..errors import GeneratorError
from ..logic.closure import absorb
from ..properties.sequences import canonical_absorbed_lasso, canonical_lasso
from ..systems.model import Cell, LassoSystem, RunTemplate, run_names

logger = logging.getLogger(__name__)

GENERATED_CLASSES = frozenset({"pr", "nl", "sync", "uis"})


def seed_for(*parts: object) -> int:
    """Stable 31-bit seed for a tuple of labels; string seeding is process independent."""
    key = "|".join(str(part) for part in parts).strip().lower()
    return random.Random(key).getrandbits(31)


@dataclass(frozen=True)
class GeneratorConfig:
    target: frozenset[str] = frozenset()
    runs: int = 3
    window: int = 4
    agents: int = 1
    props: tuple[str, ...] = ("p", "q")
    alphabet: int = 2
    env_alphabet: int = 2
    seed: int = 0
    fixed_window: bool = False

    def validate(self) -> None:
        unknown = set(self.target) - GENERATED_CLASSES - {"all"}
        if "nl_prime" in unknown:
            raise GeneratorError("no learning' has no constructive generator; use the shipped fixtures")
        if unknown:
            raise GeneratorError(f"unknown classes {sorted(unknown)}; expected a subset of {sorted(GENERATED_CLASSES)}")
        for name in ("runs", "window", "agents", "alphabet", "env_alphabet"):
            if getattr(self, name) < 1:
                raise GeneratorError(f"`{name}` must be positive, got {getattr(self, name)}")


def _observations(rng: random.Random, config: GeneratorConfig, window: int) -> list[str]:
    letters = [chr(ord("a") + k) for k in range(min(config.alphabet, 26))]
    return [rng.choice(letters) for _ in range(window)]


def _settle_loop(word: list[str], prefix_len: int) -> None:
    for c in range(prefix_len, len(word)):
        word[c] = word[prefix_len]


def _future(word: list[str], c: int, prefix_len: int, clocked: bool) -> str:
    if c < prefix_len:
        head, loop = word[c:prefix_len], word[prefix_len:]
    else:
        head, loop = [], word[c:] + word[prefix_len:c]
    lasso = canonical_lasso(head, loop) if clocked else canonical_absorbed_lasso(head, loop)
    return str(lasso)


def _history(word: list[str], c: int, clocked: bool) -> str:
    seen = word[: c + 1] if clocked else absorb(word[: c + 1])
    return ".".join(seen)


def core_token(word: list[str], c: int, prefix_len: int, target: frozenset[str], clocked: bool) -> str:
    recall, future = "pr" in target, "nl" in target
    if recall and future:
        return _history(word, c, clocked) + "|" + _future(word, c, prefix_len, clocked)
    if recall:
        return _history(word, c, clocked)
    if future:
        return _future(word, c, prefix_len, clocked)
    return word[c]


def generate_system(config: GeneratorConfig) -> LassoSystem:
    config.validate()
    rng = random.Random(config.seed)
    target = frozenset(config.target) - {"all"}
    clocked = "sync" in target
    shared_initial = "uis" in target
    count = rng.randint(1, config.runs)
    window = config.window if config.fixed_window else rng.randint(1, config.window)
    prefix_len = rng.randint(0, window - 1)

    observations: list[list[list[str]]] = []
    envs: list[list[str]] = []
    valuations: list[list[frozenset[str]]] = []
    for r in range(count):
        words = [_observations(rng, config, window) for _ in range(config.agents)]
        env = [f"e{rng.randrange(config.env_alphabet)}" for _ in range(window)]
        val = [frozenset(p for p in config.props if rng.random() < 0.5) for _ in range(window)]
        if shared_initial and r > 0:
            if "nl" in target:
                words = [list(word) for word in observations[0]]
            else:
                for i, word in enumerate(words):
                    word[0] = observations[0][i][0]
            env[0] = envs[0][0]
            val[0] = valuations[0][0]
        if "pr" in target:
            for word in words:
                _settle_loop(word, prefix_len)
        observations.append(words)
        envs.append(env)
        valuations.append(val)

    runs = []
    for r, name in enumerate(run_names(count)):
        cells = []
        for c in range(window):
            cores = tuple(
                core_token(observations[r][i], c, prefix_len, target, clocked) for i in range(config.agents)
            )
            cells.append(Cell(envs[r][c], cores, valuations[r][c]))
        runs.append(RunTemplate(tuple(cells), name))
    system = LassoSystem(config.agents, clocked, prefix_len, window - prefix_len, tuple(runs), frozenset(config.props))
    logger.debug(
        "generated %s-run system for %s with P=%s Q=%s", count, sorted(target), prefix_len, window - prefix_len
    )
    return system
