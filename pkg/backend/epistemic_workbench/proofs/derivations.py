"""Worked derivations and reusable derived-rule templates.

Each template returns a complete proof for concrete formulas. Templates
that stand for derived rules take their premises as hypotheses and must
be checked with hypotheses enabled.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from ..logic.formula import (
    TRUE,
    And,
    Formula,
    Know,
    Next,
    Not,
    Prop,
    Until,
    always,
    disj,
    iff,
    implies,
)
from .builder import ProofBuilder
from .model import Proof


def _box_steps(b: ProofBuilder, psi: Formula) -> tuple[int, int]:
    """Lines for G psi -> X G psi and G psi -> psi."""
    t3 = b.axiom("T3", {"Φ1": TRUE, "Φ2": Not(psi)}, comment="unfold the until inside G")
    t2r = b.axiom("T2R", {"Φ1": Until(TRUE, Not(psi))})
    step = b.chain([t3, t2r], implies(always(psi), Next(always(psi))))
    elim = b.chain([t3], implies(always(psi), psi))
    return step, elim


def kt1_from_kt3_builder(phi: Formula = Prop("p"), agent: int = 1) -> ProofBuilder:
    """K_i G phi -> G K_i phi in S5U+KT3.

    KT3 with true, true and G phi gives K_i G G phi -> ~X ~K_i G phi; with
    G phi <-> G G phi this shows K_i G phi is preserved by X, and RT2 closes
    the argument with K_i G phi -> K_i phi.
    """
    i = agent
    b = ProofBuilder("S5U+KT3", agents=agent)
    g = always(phi)
    gg = always(g)
    know_g = Know(i, g)
    know_true = Know(i, TRUE)
    inner = Until(know_true, Not(g))
    outer = Until(know_true, inner)

    step_gg, elim_gg = _box_steps(b, g)
    premise = b.chain([elim_gg, step_gg], implies(gg, And(Not(Not(g)), Next(gg))))
    no_inner = b.until_induction(premise, know_true)
    premise = b.chain([no_inner, step_gg], implies(gg, And(Not(inner), Next(gg))))
    no_outer = b.until_induction(premise, know_true, comment="G G phi rules out the KT3 consequent")
    known = b.necessitate(no_outer, i)
    k2 = b.axiom("K2", {"Φ1": gg, "Φ2": Not(outer)}, agent=i)
    know_no_outer = b.chain([known, k2], implies(Know(i, gg), Know(i, Not(outer))))

    kt3 = b.axiom("KT3", {"Φ1": TRUE, "Φ2": TRUE, "Φ3": g}, agent=i, comment="KT3 with true, true, G phi")
    top = b.tautology(TRUE)
    trivially_known = b.necessitate(top, i)
    lift = b.chain([trivially_known], implies(Not(know_g), And(know_true, Not(know_g))))
    next_lift = b.next_necessitate(lift)
    t1 = b.axiom("T1", {"Φ1": Not(know_g), "Φ2": And(know_true, Not(know_g))})
    keeps = b.chain(
        [know_no_outer, kt3, t1, trivially_known, next_lift],
        implies(Know(i, gg), Not(Next(Not(know_g)))),
    )
    flip = b.axiom("T2R", {"Φ1": know_g})

    step_g, elim_g = _box_steps(b, phi)
    premise = b.chain([step_g], implies(g, And(Not(Not(g)), Next(g))))
    g_to_gg = b.until_induction(premise, TRUE, comment="G phi -> G G phi")
    known_g_gg = b.necessitate(g_to_gg, i)
    k2_gg = b.axiom("K2", {"Φ1": g, "Φ2": gg}, agent=i)
    known_elim = b.necessitate(elim_g, i)
    k2_elim = b.axiom("K2", {"Φ1": g, "Φ2": phi}, agent=i)
    premise = b.chain(
        [known_g_gg, k2_gg, keeps, flip, known_elim, k2_elim],
        implies(know_g, And(Not(Not(Know(i, phi))), Next(know_g))),
    )
    b.until_induction(premise, TRUE, comment="KT1")
    return b


def kt1_from_kt3(phi: Formula = Prop("p"), agent: int = 1) -> Proof:
    return kt1_from_kt3_builder(phi, agent).build()


def until_induction(alpha: Formula, beta: Formula, gamma: Formula) -> Proof:
    """From a -> ~c and a -> X(a | (~b & ~c)) derive a -> ~(b U c)."""
    b = ProofBuilder("S5U")
    until = Until(beta, gamma)
    escape = disj(alpha, And(Not(beta), Not(gamma)))
    first = b.hypothesis(implies(alpha, Not(gamma)))
    second = b.hypothesis(implies(alpha, Next(escape)))
    t3 = b.axiom("T3", {"Φ1": beta, "Φ2": gamma})
    stay = b.chain([t3], implies(escape, implies(until, And(alpha, until))))
    next_stay = b.next_necessitate(stay)
    t1 = b.axiom("T1", {"Φ1": escape, "Φ2": implies(until, And(alpha, until))})
    t1_again = b.axiom("T1", {"Φ1": until, "Φ2": And(alpha, until)})
    both = And(alpha, until)
    premise = b.chain([first, second, t3, next_stay, t1, t1_again], implies(both, And(Not(gamma), Next(both))))
    closed = b.until_induction(premise, beta)
    b.chain([closed], implies(alpha, Not(until)))
    return b.build()


def box_idempotence(phi: Formula = Prop("p")) -> Proof:
    """G phi <-> G G phi."""
    b = ProofBuilder("S5U")
    g = always(phi)
    gg = always(g)
    step, _ = _box_steps(b, phi)
    premise = b.chain([step], implies(g, And(Not(Not(g)), Next(g))))
    forward = b.until_induction(premise, TRUE)
    t3 = b.axiom("T3", {"Φ1": TRUE, "Φ2": Not(g)})
    backward = b.chain([t3], implies(gg, g))
    b.chain([forward, backward], iff(g, gg))
    return b.build()


def know_distribution(phi: Formula, psi: Formula, agents: Sequence[int] = (1,)) -> Proof:
    """From phi -> psi derive K_sigma phi -> K_sigma psi, innermost agent first."""
    sigma = tuple(agents)
    if not sigma:
        raise ValueError("know_distribution needs at least one agent")
    b = ProofBuilder("S5", agents=max(sigma))
    current = b.hypothesis(implies(phi, psi))
    left, right = phi, psi
    for agent in reversed(sigma):
        known = b.necessitate(current, agent)
        k2 = b.axiom("K2", {"Φ1": left, "Φ2": right}, agent=agent)
        left, right = Know(agent, left), Know(agent, right)
        current = b.chain([known, k2], implies(left, right))
    return b.build()


@dataclass(frozen=True)
class DerivedRule:
    name: str
    description: str
    build: Callable[..., Proof]
    uses_hypotheses: bool
    example: Callable[[], Proof]


def derived_rule_library() -> dict[str, DerivedRule]:
    p = Prop("p")
    q = Prop("q")
    rules = (
        DerivedRule(
            "until_induction",
            "from a -> ~c and a -> X(a | (~b & ~c)) infer a -> ~(b U c)",
            until_induction,
            True,
            lambda: until_induction(p, p, p),
        ),
        DerivedRule("box_idempotence", "G phi <-> G G phi", box_idempotence, False, lambda: box_idempotence(p)),
        DerivedRule(
            "know_distribution",
            "from phi -> psi infer K_sigma phi -> K_sigma psi",
            know_distribution,
            True,
            lambda: know_distribution(p, disj(p, q), (1, 2)),
        ),
        DerivedRule("kt1_from_kt3", "K_i G phi -> G K_i phi in S5U+KT3", kt1_from_kt3, False, kt1_from_kt3),
    )
    return {rule.name: rule for rule in rules}
