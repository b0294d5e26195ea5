"""Depth-bounded random formulas for schema instantiation and oracle tests."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..logic.formula import And, Common, Everyone, Formula, Know, Next, Not, Prop, Until


@dataclass(frozen=True)
class FormulaBounds:
    depth: int = 3
    props: tuple[str, ...] = ("p", "q")
    agents: int = 1
    allow_common: bool = False


# knowledge and temporal kinds are listed twice to bias towards mixing them
_KINDS = ("not", "and", "know", "know", "next", "next", "until")


def random_formula(rng: random.Random, bounds: FormulaBounds, depth: int | None = None) -> Formula:
    depth = bounds.depth if depth is None else depth
    if depth <= 0 or rng.random() < 0.2:
        return Prop(rng.choice(bounds.props))
    kinds = _KINDS + (("everyone", "common") if bounds.allow_common else ())
    kind = rng.choice(kinds)
    sub = lambda: random_formula(rng, bounds, depth - 1)  # noqa: E731
    if kind == "not":
        return Not(sub())
    if kind == "and":
        return And(sub(), sub())
    if kind == "know":
        return Know(rng.randint(1, bounds.agents), sub())
    if kind == "next":
        return Next(sub())
    if kind == "until":
        return Until(sub(), sub())
    if kind == "everyone":
        return Everyone(sub())
    return Common(sub())


def random_substitution(rng: random.Random, bounds: FormulaBounds, names: tuple[str, ...]) -> dict[str, Formula]:
    return {name: random_formula(rng, bounds) for name in names}
