"""Checkers for perfect recall, no learning, no learning', synchrony and uis.

Pairs of indistinguishable points are enumerated up to a time horizon.
No-learning style conditions depend only on the canonical cells (and, in
clocked systems, on equal times), so they are checked over the window.
Perfect recall is checked over times below the horizon, 3W by default.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Iterator

from ..systems.model import LassoSystem, Point, indistinguishable
from .concordance import ConcordanceWitness, PointSequence, concordant
from .sequences import future_local_sequence, local_state_sequence

logger = logging.getLogger(__name__)

PR_MODES = ("definition", "b", "c", "d")
NL_MODES = ("definition", "b", "c")
CLASS_NAMES = ("pr", "nl", "nl_prime", "sync", "uis")

ClassSpec = frozenset

PR_LABELS = {
    "definition": "pr.history",
    "b": "pr.concordance",
    "c": "pr.step-back",
    "d": "pr.past-witness",
}
NL_LABELS = {
    "definition": "nl.future",
    "b": "nl.concordance",
    "c": "nl.step-forward",
}


@dataclass(frozen=True)
class Counterexample:
    first: Point
    second: Point
    clause: str
    detail: str = ""


@dataclass(frozen=True)
class PropertyReport:
    property: str
    verdict: bool
    agent: int | None = None
    mode: str | None = None
    horizon: int | None = None
    counterexample: Counterexample | None = None
    witness: ConcordanceWitness | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.verdict

    def render_text(self, system: LassoSystem | None = None) -> str:
        head = self.property
        if self.agent is not None:
            head += f"[agent {self.agent}]"
        if self.mode is not None:
            head += f" mode={self.mode}"
        line = f"{head}: {'yes' if self.verdict else 'no'}"
        if self.horizon is not None:
            line += f" (horizon {self.horizon})"
        if self.counterexample is not None:
            ce = self.counterexample
            label = system.point_label if system is not None else str
            line += f"; {ce.clause} fails at {label(ce.first)} ~ {label(ce.second)}"
            if ce.detail:
                line += f": {ce.detail}"
        return line

    def to_document(self) -> dict[str, Any]:
        document: dict[str, Any] = {
            "property": self.property,
            "verdict": self.verdict,
            "agent": self.agent,
            "mode": self.mode,
            "horizon": self.horizon,
        }
        if self.counterexample is not None:
            ce = self.counterexample
            document["counterexample"] = {
                "first": [ce.first.run, ce.first.time],
                "second": [ce.second.run, ce.second.time],
                "clause": ce.clause,
                "detail": ce.detail,
            }
        if self.notes:
            document["notes"] = list(self.notes)
        return document


def default_horizon(system: LassoSystem, factor: int = 3) -> int:
    return factor * system.window


def related_pairs(system: LassoSystem, agent: int, horizon: int) -> Iterator[tuple[Point, Point]]:
    """Indistinguishable pairs with both times below the horizon, in a fixed order."""
    points = [Point(r, n) for r in range(len(system.runs)) for n in range(horizon)]
    by_state: dict[object, list[Point]] = {}
    for point in points:
        by_state.setdefault(system.local_state(point, agent), []).append(point)
    for point in points:
        for other in by_state[system.local_state(point, agent)]:
            yield point, other


def _pr_violation(system: LassoSystem, agent: int, mode: str, a: Point, b: Point) -> str | None:
    rel = lambda x, y: indistinguishable(system, x, y, agent)  # noqa: E731
    (r, n), (r2, n2) = (a.run, a.time), (b.run, b.time)
    if mode == "definition":
        ha = local_state_sequence(system, r, agent, n)
        hb = local_state_sequence(system, r2, agent, n2)
        return None if ha == hb else f"histories {_fmt(ha)} and {_fmt(hb)} differ"
    if mode == "b":
        result = concordant(system, PointSequence(r, 0, n), PointSequence(r2, 0, n2), agent)
        return None if result else "prefixes are not concordant"
    if mode == "c":
        if n == 0:
            return None
        before = Point(r, n - 1)
        if rel(before, b):
            return None
        for l in range(n2 - 1, -1, -1):
            if not rel(a, Point(r2, l + 1)):
                break
            if rel(before, Point(r2, l)):
                return None
        return f"no l < {n2} matches {system.point_label(before)}"
    if mode == "d":
        past = {system.local_state(Point(r2, k), agent) for k in range(n2 + 1)}
        for k in range(n + 1):
            if system.local_state(Point(r, k), agent) not in past:
                return f"time {k} has no match at or before {n2}"
        return None
    raise ValueError(f"unknown perfect recall mode {mode!r}")


def has_perfect_recall(
    system: LassoSystem, agent: int, mode: str = "definition", horizon: int | None = None
) -> PropertyReport:
    if mode not in PR_MODES:
        raise ValueError(f"mode must be one of {PR_MODES}")
    horizon = horizon or default_horizon(system)
    for a, b in related_pairs(system, agent, horizon):
        detail = _pr_violation(system, agent, mode, a, b)
        if detail is not None:
            return PropertyReport(
                "pr", False, agent, mode, horizon, Counterexample(a, b, PR_LABELS[mode], detail)
            )
    return PropertyReport("pr", True, agent, mode, horizon)


def _nl_violation(system: LassoSystem, agent: int, mode: str, a: Point, b: Point) -> str | None:
    rel = lambda x, y: indistinguishable(system, x, y, agent)  # noqa: E731
    (r, n), (r2, n2) = (a.run, a.time), (b.run, b.time)
    if mode == "definition":
        fa = future_local_sequence(system, r, agent, n)
        fb = future_local_sequence(system, r2, agent, n2)
        return None if fa == fb else "future local-state sequences differ"
    if mode == "b":
        result = concordant(system, PointSequence(r, n), PointSequence(r2, n2), agent)
        return None if result else "futures are not concordant"
    if mode == "c":
        after = Point(r, n + 1)
        if rel(after, b):
            return None
        for l in range(n2 + 1, n2 + system.window + 2):
            if rel(after, Point(r2, l)):
                return None
            if not rel(a, Point(r2, l)):
                break
        return f"no l > {n2} matches {system.point_label(after)}"
    raise ValueError(f"unknown no learning mode {mode!r}")


def has_no_learning(
    system: LassoSystem, agent: int, mode: str = "definition", horizon: int | None = None
) -> PropertyReport:
    if mode not in NL_MODES:
        raise ValueError(f"mode must be one of {NL_MODES}")
    horizon = max(horizon or default_horizon(system), system.window)
    for a, b in related_pairs(system, agent, horizon):
        detail = _nl_violation(system, agent, mode, a, b)
        if detail is not None:
            return PropertyReport(
                "nl", False, agent, mode, horizon, Counterexample(a, b, NL_LABELS[mode], detail)
            )
    return PropertyReport("nl", True, agent, mode, horizon)


def has_no_learning_prime(system: LassoSystem, agent: int, horizon: int | None = None) -> PropertyReport:
    """Every future point of r has an indistinguishable future point of r'."""
    horizon = max(horizon or default_horizon(system), system.window)
    span = system.window + 1
    for a, b in related_pairs(system, agent, horizon):
        if system.clocked:
            candidates = lambda k: [Point(b.run, b.time + (k - a.time))]  # noqa: E731
        else:
            later = [Point(b.run, k2) for k2 in range(b.time, b.time + span)]
            candidates = lambda k: later  # noqa: E731
        for k in range(a.time, a.time + span):
            mine = Point(a.run, k)
            if not any(indistinguishable(system, mine, other, agent) for other in candidates(k)):
                return PropertyReport(
                    "nl_prime",
                    False,
                    agent,
                    None,
                    horizon,
                    Counterexample(
                        a,
                        b,
                        "nl_prime.future-witness",
                        f"{system.point_label(mine)} has no match at or after {system.point_label(b)}",
                    ),
                )
    return PropertyReport("nl_prime", True, agent, None, horizon)


def is_synchronous(system: LassoSystem) -> PropertyReport:
    if system.clocked:
        return PropertyReport("sync", True, notes=("clocked system",))
    # A loop cell recurs every period, so (r, P) ~ (r, P + Q) for every agent.
    a = Point(0, system.prefix_len)
    b = Point(0, system.prefix_len + system.period)
    return PropertyReport(
        "sync", False, counterexample=Counterexample(a, b, "sync.time", "same local state at two times")
    )


def has_uis(system: LassoSystem) -> PropertyReport:
    first = system.runs[0].cells[0]
    for index, run in enumerate(system.runs[1:], start=1):
        if run.cells[0] != first:
            return PropertyReport(
                "uis",
                False,
                counterexample=Counterexample(Point(0, 0), Point(index, 0), "uis.initial", "initial states differ"),
            )
    return PropertyReport("uis", True)


def check_sync_recall_step(system: LassoSystem, agent: int, horizon: int | None = None) -> PropertyReport:
    """On clocked systems: (r,n) ~ (r',n) with n > 0 implies (r,n-1) ~ (r',n-1)."""
    horizon = horizon or default_horizon(system)
    for a, b in related_pairs(system, agent, horizon):
        if a.time > 0 and a.time == b.time:
            if not indistinguishable(system, Point(a.run, a.time - 1), Point(b.run, b.time - 1), agent):
                return PropertyReport(
                    "pr_sync_step", False, agent, None, horizon, Counterexample(a, b, "pr.sync-step-back")
                )
    return PropertyReport("pr_sync_step", True, agent, None, horizon)


@dataclass(frozen=True)
class Classification:
    classes: frozenset[str]
    reports: tuple[PropertyReport, ...]

    def render_text(self, system: LassoSystem | None = None) -> str:
        names = ", ".join(sorted(self.classes)) or "(none)"
        lines = [f"classes: {names}"]
        lines.extend(report.render_text(system) for report in self.reports)
        return "\n".join(lines)

    def to_document(self) -> dict[str, Any]:
        return {
            "classes": sorted(self.classes),
            "reports": [report.to_document() for report in self.reports],
        }


def classify_report(system: LassoSystem, horizon: int | None = None) -> Classification:
    reports: list[PropertyReport] = []
    agents = range(1, system.agents + 1)
    per_agent = {
        "pr": [has_perfect_recall(system, i, horizon=horizon) for i in agents],
        "nl": [has_no_learning(system, i, horizon=horizon) for i in agents],
        "nl_prime": [has_no_learning_prime(system, i, horizon=horizon) for i in agents],
    }
    classes = {name for name, found in per_agent.items() if all(found)}
    for found in per_agent.values():
        reports.extend(found)
    for report in (is_synchronous(system), has_uis(system)):
        reports.append(report)
        if report:
            classes.add(report.property)
    if system.clocked and "pr" in classes:
        reports.extend(check_sync_recall_step(system, i, horizon) for i in agents)
    logger.info("classified system with %s runs as %s", len(system.runs), sorted(classes))
    return Classification(frozenset(classes), tuple(reports))


def classify(system: LassoSystem, horizon: int | None = None) -> ClassSpec:
    return classify_report(system, horizon).classes


def _fmt(sequence: tuple) -> str:
    return "(" + ",".join(str(item) for item in sequence) + ")"
