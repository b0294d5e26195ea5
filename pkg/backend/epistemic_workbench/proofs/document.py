"""Proof files: one numbered step per line.

    SYSTEM: S5U+KT3
    AGENTS: 1
    1. "K1 p -> p" BY AXIOM K3 WITH Phi1="p", i=1
    2. "K1 (K1 p -> p)" BY R2 FROM 1
    3. "q" BY HYPOTHESIS

``#`` starts a comment. Steps whose text cannot be read are kept with an
error so the checker can report them as syntax failures in place.
"""

from __future__ import annotations

import re
from pathlib import Path

from ..axioms.schemas import normalize_metavariable
from ..errors import FormulaSyntaxError, ProofFormatError
from ..logic.formula import to_text
from ..logic.parser import parse
from .model import AxiomStep, HypothesisStep, Proof, ProofLine, RuleStep

_STEP = re.compile(r'^(\d+)\.\s*"([^"]*)"\s+BY\s+(.+)$')
_AXIOM = re.compile(r"^AXIOM\s+(\w+)\s*(.*)$")
_RULE = re.compile(r"^(\w+)\s+FROM\s+(\d+(?:\s*,\s*\d+)*)$")
_ASSIGNMENT = re.compile(r'(\w+)\s*=\s*(?:"([^"]*)"|(\d+))')
_HEADER = re.compile(r"^(SYSTEM|AGENTS)\s*:\s*(\S+)$")


def _strip_comment(line: str) -> str:
    in_quotes = False
    for index, char in enumerate(line):
        if char == '"':
            in_quotes = not in_quotes
        elif char == "#" and not in_quotes:
            return line[:index].rstrip()
    return line.rstrip()


def _justification(text: str, agents: int | None):
    text = text.strip()
    if text == "HYPOTHESIS":
        return HypothesisStep()
    axiom = _AXIOM.match(text)
    if axiom:
        schema, rest = axiom.groups()
        rest = re.sub(r"^WITH\b", "", rest.strip()).strip()
        substitution = []
        agent = None
        for name, formula_text, number in _ASSIGNMENT.findall(rest):
            if name == "i":
                agent = int(number)
            else:
                substitution.append((normalize_metavariable(name), parse(formula_text, agents)))
        leftover = _ASSIGNMENT.sub("", rest).replace(",", "").strip()
        if leftover:
            raise ValueError(f"unreadable axiom arguments {leftover!r}")
        return AxiomStep(schema, tuple(substitution), agent)
    rule = _RULE.match(text)
    if rule:
        name, refs = rule.groups()
        return RuleStep(name, tuple(int(ref) for ref in refs.split(",")))
    raise ValueError(f"unreadable justification {text!r}")


def parse_proof(text: str) -> Proof:
    axiom_set: str | None = None
    agents: int | None = None
    lines: list[ProofLine] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        header = _HEADER.match(line)
        if header:
            key, value = header.groups()
            if key == "SYSTEM":
                axiom_set = value
            else:
                if not value.isdigit() or int(value) < 1:
                    raise ProofFormatError(f"AGENTS must be a positive integer, got {value!r}", lineno)
                agents = int(value)
            continue
        number_match = re.match(r"^(\d+)\.", line)
        if not number_match:
            raise ProofFormatError("expected a header or a numbered step", lineno)
        number = int(number_match.group(1))
        if lines and number <= lines[-1].number:
            raise ProofFormatError(f"step {number} is not numbered above step {lines[-1].number}", lineno)
        step = _STEP.match(line)
        if step is None:
            lines.append(ProofLine(number, None, None, "step does not match `N. \"formula\" BY ...`"))
            continue
        _, formula_text, justification_text = step.groups()
        try:
            formula = parse(formula_text, agents)
            justification = _justification(justification_text, agents)
        except (FormulaSyntaxError, ValueError) as exc:
            lines.append(ProofLine(number, None, None, str(exc)))
            continue
        lines.append(ProofLine(number, formula, justification))
    if axiom_set is None:
        raise ProofFormatError("missing `SYSTEM:` header", 1)
    if not lines:
        raise ProofFormatError("proof has no steps", 1)
    return Proof(tuple(lines), axiom_set, agents)


def _justification_text(step) -> str:
    if isinstance(step, HypothesisStep):
        return "HYPOTHESIS"
    if isinstance(step, RuleStep):
        return f"{step.rule} FROM {', '.join(str(ref) for ref in step.premises)}"
    parts = [f'{name.replace("Φ", "Phi")}="{to_text(f)}"' for name, f in step.substitution]
    text = f"AXIOM {step.schema}"
    if parts:
        text += " WITH " + ", ".join(parts)
    if step.agent is not None:
        text += f", i={step.agent}" if parts else f" i={step.agent}"
    return text


def dump_proof(proof: Proof, comments: dict[int, str] | None = None) -> str:
    out = [f"SYSTEM: {proof.axiom_set}"]
    if proof.agents is not None:
        out.append(f"AGENTS: {proof.agents}")
    for line in proof.lines:
        if line.formula is None or line.justification is None:
            raise ValueError(f"line {line.number} has no readable content to write")
        text = f'{line.number}. "{to_text(line.formula)}" BY {_justification_text(line.justification)}'
        if comments and line.number in comments:
            text += f"  # {comments[line.number]}"
        out.append(text)
    return "\n".join(out) + "\n"


def load_proof(path: str | Path) -> Proof:
    return parse_proof(Path(path).read_text(encoding="utf-8"))
