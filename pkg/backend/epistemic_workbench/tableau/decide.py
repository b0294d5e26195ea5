"""Satisfiability for the classes without recall or learning constraints."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

from ..errors import ExtractionError
from ..logic.closure import DEFAULT_CLOSURE_CAP
from ..logic.formula import Formula, to_text
from ..systems.documents import system_to_document
from ..systems.evaluator import evaluate
from ..systems.model import LassoSystem, Point, uis_transform
from .elimination import eliminate
from .extraction import designated_lasso_length, extract_system
from .premodel import PreModel, build_premodel

logger = logging.getLogger(__name__)

SAT_CLASSES = ("all", "sync", "uis", "sync_uis")
DEFAULT_COVER_DOUBLINGS = 8


@dataclass(frozen=True)
class SatResult:
    formula: Formula
    klass: str
    satisfiable: bool
    system: LassoSystem | None = None
    point: Point | None = None
    designated: int | None = None
    cover: int | None = None
    rounds: tuple[int, ...] = field(default_factory=tuple)
    premodel: PreModel | None = field(default=None, compare=False, repr=False)

    @property
    def verdict(self) -> str:
        return "SAT" if self.satisfiable else "UNSAT"

    def render_text(self) -> str:
        lines = [f"{self.verdict}: {to_text(self.formula)} (class {self.klass})"]
        if self.premodel is not None:
            lines.append(
                f"pre-model: {len(self.premodel.states)} states, {len(self.premodel.alive)} survive "
                f"after {len(self.rounds)} elimination rounds"
            )
        if self.system is not None and self.point is not None:
            lines.append(
                f"model: {len(self.system.runs)} runs, window {self.system.window}, "
                f"designated point {self.system.point_label(self.point)}"
            )
        return "\n".join(lines)

    def to_document(self) -> dict[str, Any]:
        document: dict[str, Any] = {
            "formula": to_text(self.formula),
            "class": self.klass,
            "verdict": self.verdict,
            "rounds": list(self.rounds),
        }
        if self.system is not None and self.point is not None:
            document["point"] = [self.system.runs[self.point.run].name, self.point.time]
            document["designated_state"] = self.designated
            document["cover"] = self.cover
            document["system"] = system_to_document(self.system)
        return document


def _build(pm: PreModel, designated: int, klass: str, cover: int) -> tuple[LassoSystem, Point]:
    system, point = extract_system(pm, designated, clocked=klass in ("sync", "sync_uis"), cover=cover)
    if klass in ("uis", "sync_uis"):
        system = uis_transform(system)
        point = Point(point.run, point.time + 1)
    return system, point


def decide_sat(
    psi: Formula,
    klass: str = "all",
    cap: int = DEFAULT_CLOSURE_CAP,
    cover_doublings: int = DEFAULT_COVER_DOUBLINGS,
) -> SatResult:
    """Decide psi over one class and, when satisfiable, return a checked model.

    The pre-model is built at depth 0. Unclocked models use one run per
    relevant state; clocked models also need every state at every time,
    so the start-offset cover is doubled until the designated point
    satisfies psi.
    """
    if klass not in SAT_CLASSES:
        raise ValueError(f"class must be one of {SAT_CLASSES}, got {klass!r}")
    pm = eliminate(build_premodel(psi, depth=0, cap=cap))
    candidates = [s.id for s in pm.states if s.id in pm.alive and s.holds(psi)]
    if not candidates:
        logger.info("%s is unsatisfiable in class %s", to_text(psi), klass)
        return SatResult(psi, klass, False, rounds=pm.rounds, premodel=pm)
    designated = candidates[0]
    clocked = klass in ("sync", "sync_uis")
    cover = designated_lasso_length(pm, designated) if clocked else 0
    for attempt in range(cover_doublings + 1):
        system, point = _build(pm, designated, klass, cover)
        if evaluate(system, point, psi):
            return SatResult(psi, klass, True, system, point, designated, cover, pm.rounds, pm)
        if not clocked:
            break
        cover *= 2
        logger.info("model check failed for %s; run cover raised to %s", to_text(psi), cover)
    raise ExtractionError(f"no verified model for {to_text(psi)} in class {klass} after {attempt + 1} attempts")
