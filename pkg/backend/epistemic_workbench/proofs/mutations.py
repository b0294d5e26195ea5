"""Single-step corruptions of a valid proof, each with the rejection it must produce."""

from __future__ import annotations

from dataclasses import dataclass, replace

from ..axioms.schemas import EXTRA_AXIOMS, axiom_set
from ..logic.formula import Not
from .model import AxiomStep, HypothesisStep, Proof, ProofLine, RuleStep


@dataclass(frozen=True)
class Mutation:
    name: str
    proof: Proof
    line: int
    reason: str


def _swap(proof: Proof, number: int, new_line: ProofLine | None) -> Proof:
    lines = []
    for line in proof.lines:
        if line.number != number:
            lines.append(line)
        elif new_line is not None:
            lines.append(new_line)
    return replace(proof, lines=tuple(lines))


def _first_reference(proof: Proof, number: int) -> int | None:
    for line in proof.lines:
        if isinstance(line.justification, RuleStep) and number in line.justification.premises:
            return line.number
    return None


def _lines_by(proof: Proof, predicate) -> list[ProofLine]:
    return [line for line in proof.lines if predicate(line)]


def _rule_lines(proof: Proof, rule: str) -> list[ProofLine]:
    return _lines_by(proof, lambda l: isinstance(l.justification, RuleStep) and l.justification.rule == rule)


def _rejustify(proof: Proof, line: ProofLine, step, name: str, reason: str) -> Mutation:
    edited = _swap(proof, line.number, replace(line, justification=step))
    return Mutation(f"{name} at {line.number}", edited, line.number, reason)


def mutation_catalog(proof: Proof) -> list[Mutation]:
    """Deterministic mutations of a proof that checks.

    Line choices depend only on the proof's contents, so the same proof
    always yields the same catalog.
    """
    catalog: list[Mutation] = []
    rules = axiom_set(proof.axiom_set)

    referenced = [line.number for line in proof.lines if _first_reference(proof, line.number) is not None]
    if referenced:
        n = len(referenced)
        picks = sorted({referenced[0], referenced[n // 3], referenced[2 * n // 3], referenced[-1]})
        for number in picks:
            deleted = _swap(proof, number, None)
            catalog.append(
                Mutation(f"delete line {number}", deleted, _first_reference(proof, number), "dangling-reference")
            )

    tautologies = _lines_by(proof, lambda l: isinstance(l.justification, AxiomStep) and l.justification.schema == "K1")
    instances = _lines_by(
        proof, lambda l: isinstance(l.justification, AxiomStep) and bool(l.justification.substitution)
    )
    r1, r2, rt1, rt2 = (_rule_lines(proof, name) for name in ("R1", "R2", "RT1", "RT2"))

    for label, group, reason in (
        ("tautology", tautologies, "bad-match"),
        ("axiom instance", instances, "bad-match"),
        ("R1 conclusion", r1, "bad-rule-shape"),
        ("R2 conclusion", r2, "bad-rule-shape"),
        ("RT2 conclusion", rt2, "bad-rule-shape"),
    ):
        if group:
            line = group[0]
            negated = _swap(proof, line.number, replace(line, formula=Not(line.formula)))
            catalog.append(Mutation(f"negate {label} at {line.number}", negated, line.number, reason))

    for group, new_rule in ((r2, "RT1"), (rt1, "R2"), (r1, "RT1")):
        if group:
            line = group[0]
            step = replace(line.justification, rule=new_rule)
            catalog.append(
                _rejustify(proof, line, step, f"{line.justification.rule} as {new_rule}", "bad-rule-shape")
            )

    for line in r1[:3]:
        step = RuleStep("R1", (line.number,) + line.justification.premises[1:])
        catalog.append(_rejustify(proof, line, step, "self reference", "dangling-reference"))
    if r2:
        line = r2[-1]
        step = RuleStep("R2", (line.number + 1,))
        catalog.append(_rejustify(proof, line, step, "forward reference", "dangling-reference"))
    if r1:
        line = r1[0]
        step = RuleStep("R1", line.justification.premises[:1])
        catalog.append(_rejustify(proof, line, step, "drop premise", "bad-rule-shape"))
    if rt2:
        line = rt2[-1]
        step = RuleStep("RT2", (line.justification.premises[0] - 1,))
        catalog.append(_rejustify(proof, line, step, "wrong RT2 premise", "bad-rule-shape"))
        if "RC1" not in rules.rules:
            step = RuleStep("RC1", line.justification.premises)
            catalog.append(_rejustify(proof, line, step, "RT2 as RC1", "rule-not-in-set"))

    missing = [name for name in EXTRA_AXIOMS if name not in rules.axioms]
    if instances and missing:
        line = instances[0]
        step = replace(line.justification, schema=missing[0])
        catalog.append(_rejustify(proof, line, step, missing[0], "axiom-not-in-set"))

    bound = [l for l in instances if l.justification.agent is not None]
    if bound:
        line = bound[0]
        step = replace(line.justification, agent=line.justification.agent + 1)
        catalog.append(_rejustify(proof, line, step, "agent bump", "bad-match"))
    if instances:
        line = instances[0]
        name, value = line.justification.substitution[0]
        step = replace(line.justification, substitution=((name, Not(value)),) + line.justification.substitution[1:])
        catalog.append(_rejustify(proof, line, step, "substitution tweak", "bad-match"))
    k2 = [l for l in instances if l.justification.schema == "K2"]
    if k2:
        line = k2[0]
        step = replace(line.justification, schema="K3")
        catalog.append(_rejustify(proof, line, step, "K2 as K3", "bad-match"))

    first, middle = proof.lines[0], proof.lines[len(proof.lines) // 2]
    for line in (first, middle):
        catalog.append(_rejustify(proof, line, HypothesisStep(), "hypothesis", "hypothesis-not-allowed"))
    garbled = _swap(proof, middle.number, ProofLine(middle.number, None, None, "unbalanced parentheses"))
    catalog.append(Mutation(f"garbled text at {middle.number}", garbled, middle.number, "syntax"))

    extras = [name for name in EXTRA_AXIOMS if name in rules.axioms]
    if extras:
        base = rules.id.split("+")[0]
        users = _lines_by(proof, lambda l: isinstance(l.justification, AxiomStep) and l.justification.schema in extras)
        if users:
            downgraded = replace(proof, axiom_set=base)
            catalog.append(Mutation(f"system {base}", downgraded, users[0].number, "axiom-not-in-set"))
    return catalog
