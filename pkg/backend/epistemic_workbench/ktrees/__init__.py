"""k-trees, tree steps and the runs derived from state sequences."""

from .runs import RUN_KINDS, DerivedRun, derive_run, derived_system
from .search import Obligation, TreeSearchResult, search_tree_sequence
from .steps import TreeStep, check_step_chain, check_tree_step, compression, compression_lasso, fusion
from .trees import KTree, TreeVerdict, close_tree, grow_tree, is_ktree, tree_formula

__all__ = [
    "RUN_KINDS",
    "DerivedRun",
    "KTree",
    "Obligation",
    "TreeSearchResult",
    "TreeStep",
    "TreeVerdict",
    "check_step_chain",
    "check_tree_step",
    "close_tree",
    "compression",
    "compression_lasso",
    "derive_run",
    "derived_system",
    "fusion",
    "grow_tree",
    "is_ktree",
    "search_tree_sequence",
    "tree_formula",
]
