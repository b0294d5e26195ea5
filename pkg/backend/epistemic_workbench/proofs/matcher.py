"""Schema matching by unification, and the semantic tautology check for K1."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..axioms.schemas import SCHEMAS, AxiomSchema
from ..logic.formula import And, Common, Everyone, Formula, Know, Meta, Next, Not, Prop, Until, max_agent

SKELETON_LIMIT = 16


@dataclass(frozen=True)
class Match:
    bindings: dict[str, Formula]
    agent: int | None = None


def unify(pattern: Formula, f: Formula, bindings: dict[str, Formula]) -> bool:
    """Extend bindings so that pattern becomes f; metavariables bind consistently."""
    if isinstance(pattern, Meta):
        bound = bindings.get(pattern.name)
        if bound is None:
            bindings[pattern.name] = f
            return True
        return bound == f
    if type(pattern) is not type(f):
        return False
    if isinstance(pattern, Prop):
        return pattern == f
    if isinstance(pattern, (And, Until)):
        return unify(pattern.left, f.left, bindings) and unify(pattern.right, f.right, bindings)
    if isinstance(pattern, Know):
        return pattern.agent == f.agent and unify(pattern.operand, f.operand, bindings)
    if isinstance(pattern, (Not, Everyone, Common, Next)):
        return unify(pattern.operand, f.operand, bindings)
    return False


def skeleton_atoms(f: Formula) -> list[Formula]:
    """Maximal subformulas that are not built with ~ and &, in first-seen order."""
    found: dict[Formula, None] = {}

    def walk(node: Formula) -> None:
        if isinstance(node, Not):
            walk(node.operand)
        elif isinstance(node, And):
            walk(node.left)
            walk(node.right)
        else:
            found.setdefault(node, None)

    walk(f)
    return list(found)


def _truth(f: Formula, assignment: dict[Formula, bool]) -> bool:
    if isinstance(f, Not):
        return not _truth(f.operand, assignment)
    if isinstance(f, And):
        return _truth(f.left, assignment) and _truth(f.right, assignment)
    return assignment[f]


def is_tautology(f: Formula, limit: int = SKELETON_LIMIT) -> bool:
    """Truth-table check over the propositional skeleton of f."""
    atoms = skeleton_atoms(f)
    if len(atoms) > limit:
        raise ValueError(f"tautology check over {len(atoms)} skeleton atoms exceeds the limit of {limit}")
    for values in product((False, True), repeat=len(atoms)):
        if not _truth(f, dict(zip(atoms, values))):
            return False
    return True


def match_schema(f: Formula, schema: AxiomSchema | str, agents: int | None = None) -> Match | None:
    """A substitution (and agent) under which the schema yields f, or None."""
    if isinstance(schema, str):
        schema = SCHEMAS[schema]
    if schema.semantic:
        try:
            return Match({}) if is_tautology(f) else None
        except ValueError:
            return None
    m = max(agents or 1, max_agent(f), 1)
    candidates = range(1, m + 1) if schema.agent_bound else (1,)
    for agent in candidates:
        bindings: dict[str, Formula] = {}
        if unify(schema.pattern(agent, m), f, bindings):
            return Match(bindings, agent if schema.agent_bound else None)
    return None
