"""Exception types raised by the workbench.

Verification outcomes (rejected proofs, failed class checks, soundness
violations) are returned as report values; these exceptions cover bad
input and exhausted resources only.
"""

from __future__ import annotations


class WorkbenchError(Exception):
    """Base class for all workbench errors."""


class FormulaSyntaxError(WorkbenchError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnsupportedFormulaError(WorkbenchError, ValueError):
    pass


class ClosureLimitError(WorkbenchError, RuntimeError):
    def __init__(self, size: int, cap: int, unit: str = "formulas"):
        super().__init__(f"Closure would produce {size} {unit}; cap is {cap}.")
        self.size = size
        self.cap = cap


class SystemFormatError(WorkbenchError, ValueError):
    pass


class GeneratorError(WorkbenchError, ValueError):
    pass


class SubstitutionError(WorkbenchError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its message otherwise
        return str(self.args[0]) if self.args else ""


class ProofFormatError(WorkbenchError, ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ExtractionError(WorkbenchError, RuntimeError):
    pass


class SequenceError(WorkbenchError, ValueError):
    pass


class SearchBudgetExceeded(WorkbenchError, RuntimeError):
    pass
