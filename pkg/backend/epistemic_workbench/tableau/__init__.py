"""Pre-model tableau: atoms, elimination, acceptable sequences and checked models."""

from .atoms import Atom, atoms_of, locally_consistent
from .decide import SAT_CLASSES, SatResult, decide_sat
from .elimination import eliminate
from .extraction import acceptable_extension, extract_system, is_acceptable
from .premodel import (
    PreModel,
    SigmaState,
    build_premodel,
    current_information,
    phi_formulas,
    premodel_to_document,
    render_premodel,
)
from .search import SearchOutcome, bounded_model_search

__all__ = [
    "Atom",
    "PreModel",
    "SAT_CLASSES",
    "SatResult",
    "SearchOutcome",
    "SigmaState",
    "acceptable_extension",
    "atoms_of",
    "bounded_model_search",
    "build_premodel",
    "current_information",
    "decide_sat",
    "eliminate",
    "extract_system",
    "is_acceptable",
    "locally_consistent",
    "phi_formulas",
    "premodel_to_document",
    "render_premodel",
]
