"""Formula parsing, printing, alternation depth and closures."""

import pytest

from epistemic_workbench.errors import ClosureLimitError, FormulaSyntaxError, UnsupportedFormulaError
from epistemic_workbench.logic.closure import (
    absorb,
    absorptive_concat,
    basic_closure,
    has_negation_property,
    indices_up_to,
    is_index,
    level_closure,
)
from epistemic_workbench.logic.formula import (
    FALSE,
    TRUE,
    And,
    Common,
    Everyone,
    Know,
    Next,
    Not,
    Prop,
    Until,
    alternation_depth,
    disj,
    implies,
    know_seq,
    to_text,
)
from epistemic_workbench.logic.parser import parse

p, q, r = Prop("p"), Prop("q"), Prop("r")


def test_parse_knowledge_of_until():
    assert parse("K1 (p U q)") == Know(1, Until(p, q))


def test_true_desugars_through_reserved_proposition():
    assert parse("true") == Not(And(Prop("p0"), Not(Prop("p0"))))
    assert parse("false") == FALSE


def test_agent_index_below_one_is_rejected():
    with pytest.raises(FormulaSyntaxError, match="at least 1"):
        parse("K0 p")


def test_agent_index_above_bound_is_rejected():
    with pytest.raises(FormulaSyntaxError, match="exceeds the agent count 2"):
        parse("K3 p", agents=2)


def test_syntax_error_reports_position():
    with pytest.raises(FormulaSyntaxError) as excinfo:
        parse("p &")
    assert excinfo.value.position == 3


@pytest.mark.parametrize("text", ["P", "p q", "(p", "U p", "p ? q"])
def test_malformed_text_is_rejected(text):
    with pytest.raises(FormulaSyntaxError):
        parse(text)


def test_precedence_and_associativity():
    assert parse("p U q U r") == Until(p, Until(q, r))
    assert parse("p & q | r") == disj(And(p, q), r)
    assert parse("p -> q -> r") == implies(p, implies(q, r))
    assert parse("~p U q") == Until(Not(p), q)
    assert parse("X p & q") == And(Next(p), q)


def test_indexed_everyone_and_common():
    assert parse("E2 p") == Everyone(Everyone(p))
    assert parse("C E p") == Common(Everyone(p))


@pytest.mark.parametrize(
    "text",
    [
        "K1 (p U q)",
        "(p -> q)",
        "(p | q)",
        "(p <-> q)",
        "L2 X p",
        "G F p",
        "true -> p",
        "~~p",
        "C (p & K2 q)",
        "E2 (p U ~q)",
        "K1 ~K2 K1 p",
    ],
)
def test_printing_then_parsing_is_identity(text):
    f = parse(text)
    assert parse(to_text(f)) == f


def test_printer_resugars_abbreviations():
    assert to_text(parse("F p")) == "F p"
    assert to_text(parse("G p")) == "G p"
    assert to_text(parse("L1 p")) == "L1 p"
    assert to_text(parse("p -> q")) == "(p -> q)"
    assert to_text(TRUE) == "true"


def test_alternation_depth_examples():
    assert alternation_depth(parse("K1 ~K2 K1 p")) == 3
    assert alternation_depth(parse("K1 G K1 p")) == 1
    assert alternation_depth(parse("p U q")) == 0


def test_alternation_depth_rejects_common_knowledge():
    with pytest.raises(UnsupportedFormulaError):
        alternation_depth(parse("C p"))
    with pytest.raises(UnsupportedFormulaError):
        alternation_depth(parse("K1 E p"))


def test_alternation_depth_of_knowledge_sequences():
    phi = parse("K1 q")
    for sigma in indices_up_to(3, 2):
        if sigma and sigma[-1] != 1:
            assert alternation_depth(know_seq(sigma, phi)) == len(sigma) + 1


def test_basic_closure_examples():
    assert basic_closure(p).formulas == {p, Not(p)}
    k1p = Know(1, p)
    assert basic_closure(k1p).formulas == {k1p, Not(k1p), p, Not(p)}


def test_basic_closure_of_common_knowledge():
    cp = Common(p)
    closure = basic_closure(cp, agents=2)
    for f in (Everyone(cp), Know(1, cp), Know(2, cp)):
        assert f in closure
        assert Not(f) in closure


@pytest.mark.parametrize("text", ["p", "K1 p", "p U q", "C p & X K2 q", "~~p"])
def test_closures_have_the_negation_property(text):
    assert has_negation_property(basic_closure(parse(text), agents=2))
    assert has_negation_property(level_closure(parse("p"), 0, agent=1))


def test_level_closure_size_counts_each_disjunction_once():
    assert len(level_closure(p, 0, agent=1)) == 2 + 2 * (2**2 - 1)
    assert Know(1, disj(p, Not(p))) in level_closure(p, 0, agent=1)
    assert len(level_closure(And(p, q), 0, agent=1)) == 6 + 2 * (2**6 - 1)


def test_level_one_closure_is_union_over_agents():
    merged = level_closure(p, 0, agent=1, agents=2).formulas | level_closure(p, 0, agent=2, agents=2).formulas
    assert level_closure(p, 1, agents=2).formulas == merged


def test_level_closure_cap():
    with pytest.raises(ClosureLimitError, match="cap is 100"):
        level_closure(And(p, q), 0, agent=1, cap=100)


def test_absorptive_concatenation():
    assert absorptive_concat(("l",), "l") == ("l",)
    assert absorptive_concat(("l",), "l2") == ("l", "l2")
    assert absorptive_concat((), "x") == ("x",)
    assert absorb("aabaa") == ("a", "b", "a")


def test_indices():
    assert indices_up_to(2, 2) == [(), (1,), (2,), (1, 2), (2, 1)]
    assert is_index((1, 2, 1))
    assert not is_index((1, 1))
