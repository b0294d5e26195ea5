"""Hilbert-style proofs: file format, checker, builders and worked derivations."""

from .builder import ProofBuilder
from .checker import check_proof
from .derivations import DerivedRule, derived_rule_library, kt1_from_kt3
from .document import dump_proof, load_proof, parse_proof
from .model import FAILURE_REASONS, AxiomStep, HypothesisStep, Proof, ProofLine, ProofVerdict, RuleStep
from .mutations import Mutation, mutation_catalog

__all__ = [
    "AxiomStep",
    "DerivedRule",
    "FAILURE_REASONS",
    "HypothesisStep",
    "Mutation",
    "Proof",
    "ProofBuilder",
    "ProofLine",
    "ProofVerdict",
    "RuleStep",
    "check_proof",
    "derived_rule_library",
    "dump_proof",
    "kt1_from_kt3",
    "load_proof",
    "mutation_catalog",
    "parse_proof",
]
