"""Axiom schema catalog, instantiation and named axiom sets.

Schemas are formula templates over metavariables ``Φ1``..``Φ3``. Schemas
mentioning K_i are built per agent. K1 stands for every propositional
tautology; it has no single template and is matched semantically by the
proof checker. For random instantiation it offers a few tautology shapes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from ..errors import SubstitutionError
from ..logic.formula import (
    And,
    Common,
    Everyone,
    Formula,
    Know,
    Meta,
    Next,
    Not,
    Prop,
    Until,
    always,
    conj_all,
    disj,
    iff,
    implies,
    possible,
)

PHI1, PHI2, PHI3 = Meta("Φ1"), Meta("Φ2"), Meta("Φ3")
METAVARIABLES = ("Φ1", "Φ2", "Φ3")

Builder = Callable[[int, int], Formula]

TAUTOLOGY_TEMPLATES: tuple[Formula, ...] = (
    disj(PHI1, Not(PHI1)),
    implies(PHI1, implies(PHI2, PHI1)),
    implies(And(PHI1, PHI2), PHI1),
    implies(And(implies(PHI1, PHI2), implies(PHI2, PHI3)), implies(PHI1, PHI3)),
    implies(Not(Not(PHI1)), PHI1),
    implies(implies(PHI1, PHI2), implies(Not(PHI2), Not(PHI1))),
)


@dataclass(frozen=True)
class AxiomSchema:
    id: str
    description: str
    build: Builder
    agent_bound: bool = False
    semantic: bool = False

    def pattern(self, agent: int = 1, agents: int = 1) -> Formula:
        return self.build(agent, max(agents, agent))

    def metavariables(self, agent: int = 1, agents: int = 1) -> tuple[str, ...]:
        found = {node.name for node in _metas(self.pattern(agent, agents))}
        return tuple(name for name in METAVARIABLES if name in found)


def _metas(f: Formula):
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Meta):
            yield node
        elif isinstance(node, (And, Until)):
            stack.extend((node.left, node.right))
        elif isinstance(node, (Not, Know, Everyone, Common, Next)):
            stack.append(node.operand)


def _kt3(i: int, m: int) -> Formula:
    antecedent = And(Know(i, PHI1), Next(And(Know(i, PHI2), Not(Know(i, PHI3)))))
    consequent = possible(i, Until(Know(i, PHI1), Until(Know(i, PHI2), Not(PHI3))))
    return implies(antecedent, consequent)


def _kt4(i: int, m: int) -> Formula:
    until = Until(Know(i, PHI1), Know(i, PHI2))
    return implies(until, Know(i, until))


SCHEMAS: dict[str, AxiomSchema] = {
    schema.id: schema
    for schema in (
        AxiomSchema("K1", "all propositional tautologies", lambda i, m: TAUTOLOGY_TEMPLATES[0], semantic=True),
        AxiomSchema(
            "K2",
            "K_i Φ1 & K_i (Φ1 -> Φ2) -> K_i Φ2",
            lambda i, m: implies(And(Know(i, PHI1), Know(i, implies(PHI1, PHI2))), Know(i, PHI2)),
            agent_bound=True,
        ),
        AxiomSchema("K3", "K_i Φ1 -> Φ1", lambda i, m: implies(Know(i, PHI1), PHI1), agent_bound=True),
        AxiomSchema(
            "K4", "K_i Φ1 -> K_i K_i Φ1", lambda i, m: implies(Know(i, PHI1), Know(i, Know(i, PHI1))), agent_bound=True
        ),
        AxiomSchema(
            "K5",
            "~K_i Φ1 -> K_i ~K_i Φ1",
            lambda i, m: implies(Not(Know(i, PHI1)), Know(i, Not(Know(i, PHI1)))),
            agent_bound=True,
        ),
        AxiomSchema(
            "T1",
            "X Φ1 & X (Φ1 -> Φ2) -> X Φ2",
            lambda i, m: implies(And(Next(PHI1), Next(implies(PHI1, PHI2))), Next(PHI2)),
        ),
        AxiomSchema("T2", "X ~Φ1 -> ~X Φ1", lambda i, m: implies(Next(Not(PHI1)), Not(Next(PHI1)))),
        AxiomSchema("T2R", "~X Φ1 -> X ~Φ1", lambda i, m: implies(Not(Next(PHI1)), Next(Not(PHI1)))),
        AxiomSchema(
            "T3",
            "Φ1 U Φ2 <-> Φ2 | (Φ1 & X (Φ1 U Φ2))",
            lambda i, m: iff(Until(PHI1, PHI2), disj(PHI2, And(PHI1, Next(Until(PHI1, PHI2))))),
        ),
        AxiomSchema(
            "C1",
            "E Φ1 <-> K_1 Φ1 & ... & K_m Φ1",
            lambda i, m: iff(Everyone(PHI1), conj_all(Know(j, PHI1) for j in range(1, m + 1))),
        ),
        AxiomSchema(
            "C2", "C Φ1 -> E (Φ1 & C Φ1)", lambda i, m: implies(Common(PHI1), Everyone(And(PHI1, Common(PHI1))))
        ),
        AxiomSchema(
            "KT1", "K_i G Φ1 -> G K_i Φ1", lambda i, m: implies(Know(i, always(PHI1)), always(Know(i, PHI1))),
            agent_bound=True,
        ),
        AxiomSchema(
            "KT2", "K_i X Φ1 -> X K_i Φ1", lambda i, m: implies(Know(i, Next(PHI1)), Next(Know(i, PHI1))),
            agent_bound=True,
        ),
        AxiomSchema(
            "KT3",
            "K_i Φ1 & X (K_i Φ2 & ~K_i Φ3) -> L_i ((K_i Φ1) U ((K_i Φ2) U ~Φ3))",
            _kt3,
            agent_bound=True,
        ),
        AxiomSchema("KT4", "(K_i Φ1) U (K_i Φ2) -> K_i ((K_i Φ1) U (K_i Φ2))", _kt4, agent_bound=True),
        AxiomSchema(
            "KT5", "X K_i Φ1 -> K_i X Φ1", lambda i, m: implies(Next(Know(i, PHI1)), Know(i, Next(PHI1))),
            agent_bound=True,
        ),
        AxiomSchema("NLSU", "K_i Φ1 <-> K_1 Φ1", lambda i, m: iff(Know(i, PHI1), Know(1, PHI1)), agent_bound=True),
    )
}

S5_AXIOMS = ("K1", "K2", "K3", "K4", "K5")
TEMPORAL_AXIOMS = ("T1", "T2", "T2R", "T3")
COMMON_AXIOMS = ("C1", "C2")
EXTRA_AXIOMS = ("KT1", "KT2", "KT3", "KT4", "KT5", "NLSU")

RULES = ("R1", "R2", "RT1", "RT2", "RC1")


@dataclass(frozen=True)
class AxiomSet:
    id: str
    axioms: frozenset[str]
    rules: frozenset[str]

    @property
    def allows_common(self) -> bool:
        return "RC1" in self.rules


_BASES: dict[str, tuple[tuple[str, ...], tuple[str, ...]]] = {
    "S5": (S5_AXIOMS, ("R1", "R2")),
    "S5U": (S5_AXIOMS + TEMPORAL_AXIOMS, ("R1", "R2", "RT1", "RT2")),
    "S5CU": (S5_AXIOMS + TEMPORAL_AXIOMS + COMMON_AXIOMS, RULES),
}


def axiom_set(identifier: str) -> AxiomSet:
    """Parse ``S5``, ``S5U`` or ``S5CU`` followed by ``+KT1``.. and ``+NLSU`` suffixes."""
    base, *extras = [part.strip() for part in identifier.split("+")]
    if base not in _BASES:
        raise ValueError(f"unknown axiom system {base!r}; expected one of {sorted(_BASES)}")
    axioms, rules = _BASES[base]
    chosen = set(axioms)
    for extra in extras:
        if extra not in EXTRA_AXIOMS:
            raise ValueError(f"unknown axiom {extra!r} in {identifier!r}")
        chosen.add(extra)
    canonical = "+".join([base] + sorted(set(extras), key=EXTRA_AXIOMS.index))
    return AxiomSet(canonical, frozenset(chosen), frozenset(rules))


def class_key(classes) -> str:
    names = sorted(set(classes) - {"all"})
    return ",".join(names) or "all"


AXIOM_SET_BY_CLASS: dict[str, str] = {
    "all": "S5CU",
    "sync": "S5CU",
    "uis": "S5CU",
    "sync,uis": "S5CU",
    "pr": "S5U+KT3",
    "pr,uis": "S5U+KT3",
    "pr,sync": "S5U+KT2",
    "pr,sync,uis": "S5U+KT2",
    "nl": "S5U+KT4",
    "nl,pr": "S5U+KT3+KT4",
    "nl,sync": "S5U+KT5",
    "nl,pr,sync": "S5U+KT2+KT5",
    "nl,sync,uis": "S5U+KT2+KT5+NLSU",
    "nl,pr,sync,uis": "S5U+KT2+KT5+NLSU",
}


def axiom_set_for_classes(classes) -> AxiomSet:
    key = class_key(classes)
    if key not in AXIOM_SET_BY_CLASS:
        raise ValueError(f"no axiom system is registered for classes {key!r}")
    return axiom_set(AXIOM_SET_BY_CLASS[key])


def normalize_metavariable(name: str) -> str:
    """Accept ``Phi1`` as a spelling of ``Φ1``."""
    name = name.strip()
    if name.lower().startswith("phi"):
        return "Φ" + name[3:]
    return name


def substitute(pattern: Formula, bindings: Mapping[str, Formula]) -> Formula:
    if isinstance(pattern, Meta):
        if pattern.name not in bindings:
            raise SubstitutionError(f"no binding for metavariable {pattern.name}")
        return bindings[pattern.name]
    if isinstance(pattern, Prop):
        return pattern
    if isinstance(pattern, Not):
        return Not(substitute(pattern.operand, bindings))
    if isinstance(pattern, And):
        return And(substitute(pattern.left, bindings), substitute(pattern.right, bindings))
    if isinstance(pattern, Until):
        return Until(substitute(pattern.left, bindings), substitute(pattern.right, bindings))
    if isinstance(pattern, Know):
        return Know(pattern.agent, substitute(pattern.operand, bindings))
    if isinstance(pattern, Everyone):
        return Everyone(substitute(pattern.operand, bindings))
    if isinstance(pattern, Common):
        return Common(substitute(pattern.operand, bindings))
    if isinstance(pattern, Next):
        return Next(substitute(pattern.operand, bindings))
    raise TypeError(f"not a formula: {pattern!r}")


def instantiate(
    schema: AxiomSchema | str,
    substitution: Mapping[str, Formula],
    agent: int = 1,
    agents: int | None = None,
    template: int = 0,
) -> Formula:
    """Substitute formulas for the schema's metavariables.

    For K1 ``template`` picks one of the tautology shapes.
    """
    if isinstance(schema, str):
        if schema not in SCHEMAS:
            raise ValueError(f"unknown axiom schema {schema!r}")
        schema = SCHEMAS[schema]
    if agent < 1:
        raise ValueError("agents are numbered from 1")
    bindings = {normalize_metavariable(name): f for name, f in substitution.items()}
    if schema.semantic:
        pattern = TAUTOLOGY_TEMPLATES[template % len(TAUTOLOGY_TEMPLATES)]
    else:
        pattern = schema.pattern(agent, agents or agent)
    return substitute(pattern, bindings)
