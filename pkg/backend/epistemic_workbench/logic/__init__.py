"""Formula syntax: AST, parser, printer and closures."""

from .closure import ClosureSet, absorb, absorptive_concat, basic_closure, level_closure
from .formula import Formula, alternation_depth, to_text
from .parser import parse

__all__ = [
    "ClosureSet",
    "Formula",
    "absorb",
    "absorptive_concat",
    "alternation_depth",
    "basic_closure",
    "level_closure",
    "parse",
    "to_text",
]
