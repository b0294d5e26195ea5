"""Lasso systems and the semantic evaluator."""

from .evaluator import (
    TruthTable,
    Validity,
    evaluate,
    evaluate_common,
    evaluate_common_fixpoint,
    evaluate_unrolled,
    valid_in_system,
)
from .fixtures import fixture_nl_prime
from .model import (
    Cell,
    LassoSystem,
    Point,
    RunTemplate,
    canonical_position,
    from_lassos,
    indistinguishable,
    uis_transform,
)

__all__ = [
    "Cell",
    "LassoSystem",
    "Point",
    "RunTemplate",
    "TruthTable",
    "Validity",
    "canonical_position",
    "evaluate",
    "evaluate_common",
    "evaluate_common_fixpoint",
    "evaluate_unrolled",
    "fixture_nl_prime",
    "from_lassos",
    "indistinguishable",
    "uis_transform",
    "valid_in_system",
]
