"""Proof lines, justifications and checker verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from ..logic.formula import Formula

FAILURE_REASONS = (
    "syntax",
    "dangling-reference",
    "bad-match",
    "bad-rule-shape",
    "axiom-not-in-set",
    "rule-not-in-set",
    "hypothesis-not-allowed",
)


@dataclass(frozen=True)
class AxiomStep:
    schema: str
    substitution: tuple[tuple[str, Formula], ...] = ()
    agent: int | None = None

    def bindings(self) -> dict[str, Formula]:
        return dict(self.substitution)


@dataclass(frozen=True)
class RuleStep:
    rule: str
    premises: tuple[int, ...]


@dataclass(frozen=True)
class HypothesisStep:
    pass


Justification = Union[AxiomStep, RuleStep, HypothesisStep]


@dataclass(frozen=True)
class ProofLine:
    """One numbered step; ``formula`` is None when its text did not parse."""

    number: int
    formula: Formula | None
    justification: Justification | None
    error: str | None = None


@dataclass(frozen=True)
class Proof:
    lines: tuple[ProofLine, ...]
    axiom_set: str
    agents: int | None = None

    @property
    def conclusion(self) -> Formula | None:
        return self.lines[-1].formula if self.lines else None

    def line(self, number: int) -> ProofLine | None:
        for line in self.lines:
            if line.number == number:
                return line
        return None


@dataclass(frozen=True)
class ProofVerdict:
    accepted: bool
    line: int | None = None
    reason: str | None = None
    detail: str = ""
    checked: int = 0
    notes: tuple[str, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.accepted

    def render_text(self) -> str:
        if self.accepted:
            return f"proof accepted ({self.checked} lines)"
        text = f"proof rejected at line {self.line}: {self.reason}"
        return f"{text} ({self.detail})" if self.detail else text

    def to_document(self) -> dict[str, object]:
        return {
            "accepted": self.accepted,
            "line": self.line,
            "reason": self.reason,
            "detail": self.detail,
            "checked": self.checked,
        }
