"""Axiom schemas, class-targeted system generation and soundness sweeps."""

from .falsify import Falsification, FalsifyBounds, falsify
from .generator import GeneratorConfig, generate_system
from .schemas import AXIOM_SET_BY_CLASS, SCHEMAS, AxiomSchema, AxiomSet, axiom_set, instantiate
from .soundness import SoundnessReport, soundness_suite

__all__ = [
    "AXIOM_SET_BY_CLASS",
    "AxiomSchema",
    "AxiomSet",
    "Falsification",
    "FalsifyBounds",
    "GeneratorConfig",
    "SCHEMAS",
    "SoundnessReport",
    "axiom_set",
    "falsify",
    "generate_system",
    "instantiate",
    "soundness_suite",
]
