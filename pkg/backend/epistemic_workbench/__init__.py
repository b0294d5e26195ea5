"""Epistemic temporal logic workbench."""

__version__ = "0.3.0"
