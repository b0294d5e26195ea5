"""Recursive-descent parser for the formula grammar.

Precedence, tightest first: unary operators, ``U`` (right associative),
``&``, ``|``, ``->`` (right associative), ``<->``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import FormulaSyntaxError
from .formula import (
    FALSE,
    TRUE,
    And,
    Common,
    Everyone,
    Formula,
    Know,
    Next,
    Not,
    Prop,
    Until,
    always,
    disj,
    eventually,
    everyone_k,
    iff,
    implies,
    possible,
)

_TOKEN = re.compile(r"\s*(?:(<->|->|[~&|()])|([A-Za-z_][A-Za-z0-9_']*))")
_INDEXED = re.compile(r"([KLE])(\d+)$")
_KEYWORDS = {"true", "false", "U", "X", "F", "G", "E", "C"}


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if match is None:
            offset = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise FormulaSyntaxError(f"unexpected character {text[offset]!r}", offset)
        start = match.start(1) if match.group(1) else match.start(2)
        if match.group(1):
            tokens.append(_Token("sym", match.group(1), start))
        else:
            tokens.append(_Token("word", match.group(2), start))
        pos = match.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, agents: int | None):
        self.text = text
        self.agents = agents
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def accept(self, text: str) -> bool:
        if self.current.text == text and self.current.kind != "end":
            self.index += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            raise FormulaSyntaxError(f"expected {text!r}, found {self._describe()}", self.current.position)

    def _describe(self) -> str:
        return "end of input" if self.current.kind == "end" else repr(self.current.text)

    def parse(self) -> Formula:
        result = self.parse_iff()
        if self.current.kind != "end":
            raise FormulaSyntaxError(f"unexpected {self._describe()}", self.current.position)
        return result

    def parse_iff(self) -> Formula:
        left = self.parse_implies()
        while self.accept("<->"):
            left = iff(left, self.parse_implies())
        return left

    def parse_implies(self) -> Formula:
        left = self.parse_or()
        if self.accept("->"):
            return implies(left, self.parse_implies())
        return left

    def parse_or(self) -> Formula:
        left = self.parse_and()
        while self.accept("|"):
            left = disj(left, self.parse_and())
        return left

    def parse_and(self) -> Formula:
        left = self.parse_until()
        while self.accept("&"):
            left = And(left, self.parse_until())
        return left

    def parse_until(self) -> Formula:
        left = self.parse_unary()
        if self.accept("U"):
            return Until(left, self.parse_until())
        return left

    def _agent(self, token: _Token, digits: str) -> int:
        value = int(digits)
        if value < 1:
            raise FormulaSyntaxError(f"agent index must be at least 1 in {token.text!r}", token.position)
        if self.agents is not None and value > self.agents:
            raise FormulaSyntaxError(
                f"agent index {value} exceeds the agent count {self.agents}", token.position
            )
        return value

    def parse_unary(self) -> Formula:
        token = self.current
        if token.kind == "end":
            raise FormulaSyntaxError("unexpected end of input", token.position)
        if token.kind == "sym":
            if self.accept("~"):
                return Not(self.parse_unary())
            if self.accept("("):
                inner = self.parse_iff()
                self.expect(")")
                return inner
            raise FormulaSyntaxError(f"unexpected {token.text!r}", token.position)

        word = token.text
        indexed = _INDEXED.match(word)
        if indexed:
            self.advance()
            op, digits = indexed.groups()
            if op == "E":
                count = int(digits)
                if count < 1:
                    raise FormulaSyntaxError("E^k needs k >= 1", token.position)
                return everyone_k(count, self.parse_unary())
            agent = self._agent(token, digits)
            operand = self.parse_unary()
            return Know(agent, operand) if op == "K" else possible(agent, operand)
        if word == "true":
            self.advance()
            return TRUE
        if word == "false":
            self.advance()
            return FALSE
        if word in ("X", "F", "G", "E", "C"):
            self.advance()
            operand = self.parse_unary()
            return {
                "X": Next,
                "F": eventually,
                "G": always,
                "E": Everyone,
                "C": Common,
            }[word](operand)
        if word in _KEYWORDS or not word[0].islower():
            raise FormulaSyntaxError(f"unexpected {word!r}", token.position)
        self.advance()
        return Prop(word)


def parse(text: str, agents: int | None = None) -> Formula:
    """Parse formula text into a core AST; abbreviations are desugared."""
    return _Parser(text, agents).parse()
