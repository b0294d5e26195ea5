"""Line-by-line Hilbert proof checking."""

from __future__ import annotations

import logging

from ..axioms.schemas import SCHEMAS, AxiomSet, axiom_set, instantiate
from ..errors import SubstitutionError
from ..logic.formula import And, Common, Everyone, Formula, Know, Next, Not, Until, max_agent, to_text
from .matcher import is_tautology, match_schema
from .model import AxiomStep, HypothesisStep, Proof, ProofLine, ProofVerdict, RuleStep

logger = logging.getLogger(__name__)

PREMISE_COUNTS = {"R1": 2, "R2": 1, "RT1": 1, "RT2": 1, "RC1": 1}


def split_implication(f: Formula | None) -> tuple[Formula, Formula] | None:
    """(a, b) when f is a -> b, that is ~(a & ~b)."""
    if isinstance(f, Not) and isinstance(f.operand, And) and isinstance(f.operand.right, Not):
        return f.operand.left, f.operand.right.operand
    return None


def rule_conclusion_ok(rule: str, premises: list[Formula], f: Formula) -> bool:
    if rule == "R1":
        a, b = premises
        return split_implication(b) == (a, f) or split_implication(a) == (b, f)
    (premise,) = premises
    if rule == "R2":
        return isinstance(f, Know) and f.operand == premise
    if rule == "RT1":
        return isinstance(f, Next) and f.operand == premise
    if rule == "RT2":
        # premise: a -> (~psi & X a); conclusion: a -> ~(x U psi)
        split, goal = split_implication(premise), split_implication(f)
        if split is None or goal is None:
            return False
        a, body = split
        if not (isinstance(body, And) and isinstance(body.left, Not) and body.right == Next(a)):
            return False
        psi = body.left.operand
        b, negated = goal
        return b == a and isinstance(negated, Not) and isinstance(negated.operand, Until) and negated.operand.right == psi
    if rule == "RC1":
        # premise: a -> E(psi & a); conclusion: a -> C psi
        split, goal = split_implication(premise), split_implication(f)
        if split is None or goal is None:
            return False
        a, body = split
        if not (isinstance(body, Everyone) and isinstance(body.operand, And) and body.operand.right == a):
            return False
        return goal == (a, Common(body.operand.left))
    raise ValueError(f"unknown rule {rule!r}")


def _check_axiom(step: AxiomStep, f: Formula, rules: AxiomSet, agents: int) -> tuple[str, str] | None:
    if step.schema not in SCHEMAS or step.schema not in rules.axioms:
        return "axiom-not-in-set", f"{step.schema} is not an axiom of {rules.id}"
    schema = SCHEMAS[step.schema]
    if schema.semantic:
        try:
            return None if is_tautology(f) else ("bad-match", "not a propositional tautology")
        except ValueError as exc:
            return "bad-match", str(exc)
    if not step.substitution:
        if match_schema(f, schema, agents) is None:
            return "bad-match", f"formula is not an instance of {step.schema}"
        return None
    bindings = step.bindings()
    candidates = [step.agent] if step.agent is not None or not schema.agent_bound else range(1, agents + 1)
    for agent in candidates:
        try:
            if instantiate(schema, bindings, agent or 1, agents) == f:
                return None
        except SubstitutionError as exc:
            return "bad-match", str(exc)
    return "bad-match", f"substitution does not produce the formula from {step.schema}"


def _check_line(
    line: ProofLine, formulas: dict[int, Formula], rules: AxiomSet, agents: int, allow_hypotheses: bool
) -> tuple[str, str] | None:
    if line.formula is None or line.justification is None:
        return "syntax", line.error or "unreadable line"
    step = line.justification
    if isinstance(step, HypothesisStep):
        return None if allow_hypotheses else ("hypothesis-not-allowed", "hypotheses are disabled")
    if isinstance(step, AxiomStep):
        return _check_axiom(step, line.formula, rules, agents)
    if isinstance(step, RuleStep):
        for ref in step.premises:
            if ref >= line.number or ref not in formulas:
                return "dangling-reference", f"line {ref} is not an earlier line"
        if step.rule not in PREMISE_COUNTS:
            return "syntax", f"unknown rule {step.rule}"
        if step.rule not in rules.rules:
            return "rule-not-in-set", f"{step.rule} is not a rule of {rules.id}"
        if len(step.premises) != PREMISE_COUNTS[step.rule]:
            return "bad-rule-shape", f"{step.rule} takes {PREMISE_COUNTS[step.rule]} premises"
        if not rule_conclusion_ok(step.rule, [formulas[ref] for ref in step.premises], line.formula):
            return "bad-rule-shape", f"{to_text(line.formula)} does not follow by {step.rule}"
        return None
    return "syntax", "unknown justification"


def check_proof(proof: Proof, allow_hypotheses: bool = False) -> ProofVerdict:
    """Accept the proof, or report the first failing line and why."""
    try:
        rules = axiom_set(proof.axiom_set)
    except ValueError as exc:
        return ProofVerdict(False, proof.lines[0].number if proof.lines else None, "syntax", str(exc))
    if not proof.lines:
        return ProofVerdict(False, None, "syntax", "empty proof")
    agents = proof.agents or max(
        [1] + [max_agent(line.formula) for line in proof.lines if line.formula is not None]
    )
    formulas: dict[int, Formula] = {}
    for index, line in enumerate(proof.lines, start=1):
        failure = _check_line(line, formulas, rules, agents, allow_hypotheses)
        if failure is not None:
            reason, detail = failure
            logger.info("proof rejected at line %s: %s", line.number, reason)
            return ProofVerdict(False, line.number, reason, detail, index - 1)
        formulas[line.number] = line.formula
    return ProofVerdict(True, checked=len(proof.lines))
