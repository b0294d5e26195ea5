"""Formula AST, abbreviation constructors and the printer.

The core AST has eight node kinds. Everything else (true, disjunction,
implication, eventually, always, L_i, E^k, K_sigma) is built from them by
the constructors below and recognised again by ``to_text``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence, Union

from ..errors import UnsupportedFormulaError

RESERVED_PROP = "p0"


@dataclass(frozen=True)
class Prop:
    name: str


@dataclass(frozen=True)
class Not:
    operand: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Know:
    agent: int
    operand: "Formula"


@dataclass(frozen=True)
class Everyone:
    operand: "Formula"


@dataclass(frozen=True)
class Common:
    operand: "Formula"


@dataclass(frozen=True)
class Next:
    operand: "Formula"


@dataclass(frozen=True)
class Until:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Meta:
    """Schema metavariable such as ``Φ1``; never part of a core formula."""

    name: str


Formula = Union[Prop, Not, And, Know, Everyone, Common, Next, Until, Meta]

UNARY = (Not, Know, Everyone, Common, Next)
BINARY = (And, Until)

P0 = Prop(RESERVED_PROP)
TRUE: Formula = Not(And(P0, Not(P0)))
FALSE: Formula = Not(TRUE)


def neg(f: Formula) -> Formula:
    return Not(f)


def conj(a: Formula, b: Formula) -> Formula:
    return And(a, b)


def disj(a: Formula, b: Formula) -> Formula:
    return Not(And(Not(a), Not(b)))


def implies(a: Formula, b: Formula) -> Formula:
    return Not(And(a, Not(b)))


def iff(a: Formula, b: Formula) -> Formula:
    return And(implies(a, b), implies(b, a))


def eventually(f: Formula) -> Formula:
    return Until(TRUE, f)


def always(f: Formula) -> Formula:
    return Not(Until(TRUE, Not(f)))


def possible(agent: int, f: Formula) -> Formula:
    return Not(Know(agent, Not(f)))


def everyone_k(k: int, f: Formula) -> Formula:
    """E^k f, with E^1 f = E f and E^(k+1) f = E E^k f."""
    if k < 1:
        raise ValueError("E^k needs k >= 1")
    result = f
    for _ in range(k):
        result = Everyone(result)
    return result


def know_seq(sigma: Sequence[int], f: Formula) -> Formula:
    """K_sigma f = K_i1 ... K_ik f; the empty index gives f."""
    result = f
    for agent in reversed(tuple(sigma)):
        result = Know(agent, result)
    return result


def conj_all(parts: Iterable[Formula]) -> Formula:
    items = list(parts)
    if not items:
        return TRUE
    result = items[-1]
    for item in reversed(items[:-1]):
        result = And(item, result)
    return result


def disj_all(parts: Iterable[Formula]) -> Formula:
    items = list(parts)
    if not items:
        return FALSE
    result = items[-1]
    for item in reversed(items[:-1]):
        result = disj(item, result)
    return result


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, (And, Until)):
        return (f.left, f.right)
    if isinstance(f, UNARY):
        return (f.operand,)
    return ()


def subformulas(f: Formula) -> Iterator[Formula]:
    """All subformulas including f, each node visited once per occurrence."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(children(node))


def props_of(f: Formula) -> frozenset[str]:
    return frozenset(node.name for node in subformulas(f) if isinstance(node, Prop))


def agents_of(f: Formula) -> frozenset[int]:
    return frozenset(node.agent for node in subformulas(f) if isinstance(node, Know))


def max_agent(f: Formula) -> int:
    return max(agents_of(f), default=0)


def mentions_common(f: Formula) -> bool:
    return any(isinstance(node, (Common, Everyone)) for node in subformulas(f))


def size(f: Formula) -> int:
    return sum(1 for _ in subformulas(f))


def alternation_depth(f: Formula) -> int:
    """Greatest number of alternations of distinct K_i along a branch.

    Temporal operators are transparent. Formulas with E or C are rejected.
    """

    @lru_cache(maxsize=None)
    def walk(node: Formula, last: int | None) -> int:
        if isinstance(node, (Everyone, Common)):
            raise UnsupportedFormulaError("alternation depth is undefined for formulas with E or C")
        if isinstance(node, Know):
            step = 0 if node.agent == last else 1
            return step + walk(node.operand, node.agent)
        if isinstance(node, (And, Until)):
            return max(walk(node.left, last), walk(node.right, last))
        if isinstance(node, (Not, Next)):
            return walk(node.operand, last)
        return 0

    return walk(f, None)


@lru_cache(maxsize=65536)
def to_text(f: Formula) -> str:
    """Print in the workbench grammar, resugaring the abbreviations."""
    if isinstance(f, Prop):
        return f.name
    if isinstance(f, Meta):
        return f.name
    if f == TRUE:
        return "true"
    if f == FALSE:
        return "false"
    if isinstance(f, Not):
        inner = f.operand
        if isinstance(inner, Until) and inner.left == TRUE and isinstance(inner.right, Not):
            return f"G {to_text(inner.right.operand)}"
        if isinstance(inner, Know) and isinstance(inner.operand, Not):
            return f"L{inner.agent} {to_text(inner.operand.operand)}"
        if isinstance(inner, And) and isinstance(inner.right, Not):
            if isinstance(inner.left, Not):
                return f"({to_text(inner.left.operand)} | {to_text(inner.right.operand)})"
            return f"({to_text(inner.left)} -> {to_text(inner.right.operand)})"
        return f"~{to_text(inner)}"
    if isinstance(f, And):
        left, right = f.left, f.right
        if _is_implication(left) and _is_implication(right):
            a, b = left.operand.left, left.operand.right.operand
            if right.operand.left == b and right.operand.right.operand == a:
                return f"({to_text(a)} <-> {to_text(b)})"
        return f"({to_text(left)} & {to_text(right)})"
    if isinstance(f, Until):
        if f.left == TRUE:
            return f"F {to_text(f.right)}"
        return f"({to_text(f.left)} U {to_text(f.right)})"
    if isinstance(f, Know):
        return f"K{f.agent} {to_text(f.operand)}"
    if isinstance(f, Everyone):
        return f"E {to_text(f.operand)}"
    if isinstance(f, Common):
        return f"C {to_text(f.operand)}"
    if isinstance(f, Next):
        return f"X {to_text(f.operand)}"
    raise TypeError(f"not a formula: {f!r}")


def _is_implication(f: Formula) -> bool:
    return (
        isinstance(f, Not)
        and isinstance(f.operand, And)
        and isinstance(f.operand.right, Not)
        and not isinstance(f.operand.left, Not)
        and f != TRUE
        and f != FALSE
    )


def sort_key(f: Formula) -> tuple[int, str]:
    text = to_text(f)
    return (len(text), text)


def sorted_formulas(formulas: Iterable[Formula]) -> list[Formula]:
    return sorted(formulas, key=sort_key)
