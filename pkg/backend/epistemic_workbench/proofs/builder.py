"""Incremental construction of proofs whose steps are checked as they are added."""

from __future__ import annotations

from typing import Mapping, Sequence

from ..axioms.schemas import SCHEMAS, instantiate
from ..logic.formula import And, Common, Everyone, Formula, Know, Next, Not, Until, implies
from .checker import rule_conclusion_ok, split_implication
from .matcher import is_tautology
from .model import AxiomStep, HypothesisStep, Proof, ProofLine, RuleStep


class ProofBuilder:
    """Append steps and get back their line numbers.

    Each helper computes the conclusion itself, so a malformed step is a
    programming error and raises ``ValueError`` at once.
    """

    def __init__(self, axiom_set: str, agents: int | None = None):
        self.axiom_set = axiom_set
        self.agents = agents
        self._lines: list[ProofLine] = []
        self.comments: dict[int, str] = {}

    def __len__(self) -> int:
        return len(self._lines)

    def formula(self, number: int) -> Formula:
        return self._lines[number - 1].formula

    def _add(self, formula: Formula, justification, comment: str | None = None) -> int:
        number = len(self._lines) + 1
        self._lines.append(ProofLine(number, formula, justification))
        if comment:
            self.comments[number] = comment
        return number

    def axiom(
        self,
        schema: str,
        substitution: Mapping[str, Formula],
        agent: int | None = None,
        comment: str | None = None,
    ) -> int:
        bound = SCHEMAS[schema].agent_bound
        if bound and agent is None:
            raise ValueError(f"{schema} needs an agent")
        formula = instantiate(schema, substitution, agent or 1, self.agents or agent or 1)
        step = AxiomStep(schema, tuple(substitution.items()), agent if bound else None)
        return self._add(formula, step, comment)

    def tautology(self, formula: Formula, comment: str | None = None) -> int:
        if not is_tautology(formula):
            raise ValueError("not a propositional tautology")
        return self._add(formula, AxiomStep("K1"), comment)

    def hypothesis(self, formula: Formula, comment: str | None = None) -> int:
        return self._add(formula, HypothesisStep(), comment)

    def modus_ponens(self, fact: int, implication: int, comment: str | None = None) -> int:
        split = split_implication(self.formula(implication))
        if split is None or split[0] != self.formula(fact):
            raise ValueError(f"line {implication} is not an implication from line {fact}")
        return self._add(split[1], RuleStep("R1", (fact, implication)), comment)

    def necessitate(self, line: int, agent: int, comment: str | None = None) -> int:
        return self._add(Know(agent, self.formula(line)), RuleStep("R2", (line,)), comment)

    def next_necessitate(self, line: int, comment: str | None = None) -> int:
        return self._add(Next(self.formula(line)), RuleStep("RT1", (line,)), comment)

    def until_induction(self, line: int, left: Formula, comment: str | None = None) -> int:
        """RT2: from a -> (~psi & X a) infer a -> ~(left U psi)."""
        premise = self.formula(line)
        split = split_implication(premise)
        if split is None or not isinstance(split[1], And) or not isinstance(split[1].left, Not):
            raise ValueError(f"line {line} does not have the RT2 premise shape")
        conclusion = implies(split[0], Not(Until(left, split[1].left.operand)))
        if not rule_conclusion_ok("RT2", [premise], conclusion):
            raise ValueError(f"line {line} does not have the RT2 premise shape")
        return self._add(conclusion, RuleStep("RT2", (line,)), comment)

    def common_induction(self, line: int, comment: str | None = None) -> int:
        """RC1: from a -> E(psi & a) infer a -> C psi."""
        premise = self.formula(line)
        split = split_implication(premise)
        if split is None or not isinstance(split[1], Everyone) or not isinstance(split[1].operand, And):
            raise ValueError(f"line {line} does not have the RC1 premise shape")
        conclusion = implies(split[0], Common(split[1].operand.left))
        if not rule_conclusion_ok("RC1", [premise], conclusion):
            raise ValueError(f"line {line} does not have the RC1 premise shape")
        return self._add(conclusion, RuleStep("RC1", (line,)), comment)

    def chain(self, facts: Sequence[int], conclusion: Formula, comment: str | None = None) -> int:
        """Derive conclusion from earlier lines via one tautology and modus ponens steps.

        The tautology is f1 -> (f2 -> ... -> (fn -> conclusion)).
        """
        glue = conclusion
        for fact in reversed(facts):
            glue = implies(self.formula(fact), glue)
        current = self.tautology(glue, comment)
        for fact in facts:
            current = self.modus_ponens(fact, current)
        return current

    def build(self) -> Proof:
        return Proof(tuple(self._lines), self.axiom_set, self.agents)
