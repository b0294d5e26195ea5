"""Semantic class checkers for lasso systems."""

from .checkers import (
    Classification,
    Counterexample,
    PropertyReport,
    classify,
    classify_report,
    has_no_learning,
    has_no_learning_prime,
    has_perfect_recall,
    has_uis,
    is_synchronous,
)
from .concordance import ConcordanceWitness, PointSequence, concordant, concordant_sequences
from .sequences import Lasso, future_local_sequence, local_state_sequence

__all__ = [
    "Classification",
    "ConcordanceWitness",
    "Counterexample",
    "Lasso",
    "PointSequence",
    "PropertyReport",
    "classify",
    "classify_report",
    "concordant",
    "concordant_sequences",
    "future_local_sequence",
    "has_no_learning",
    "has_no_learning_prime",
    "has_perfect_recall",
    "has_uis",
    "is_synchronous",
    "local_state_sequence",
]
