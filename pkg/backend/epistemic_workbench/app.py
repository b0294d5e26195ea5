"""Workbench dependency wiring.

This returns a simple dictionary with the shared runtime objects.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any

try:  # pragma: no cover - optional dependency at runtime
    from dotenv import load_dotenv
except ImportError:  # pragma: no cover
    load_dotenv = None

# Support both package imports and direct script execution.
try:  # pragma: no cover - exercised in runtime environments
    from . import __version__
    from .axioms.schemas import AXIOM_SET_BY_CLASS
    from .systems.fixtures import FIXTURES
except ImportError:  # pragma: no cover
    import sys

    root = Path(__file__).resolve().parent.parent
    if str(root) not in sys.path:
        sys.path.append(str(root))
    from epistemic_workbench import __version__
    from epistemic_workbench.axioms.schemas import AXIOM_SET_BY_CLASS
    from epistemic_workbench.systems.fixtures import FIXTURES

# Ensure local `.env` values are available when running from the CLI.
if load_dotenv is not None:  # pragma: no branch
    load_dotenv(Path(__file__).resolve().parents[2] / ".env", override=False)


DEFAULT_CLOSURE_CAP = 2**16
DEFAULT_HORIZON_FACTOR = 3
DEFAULT_TRIALS = 200
DEFAULT_INSTANCES = 20
DEFAULT_COVER_DOUBLINGS = 8
DEFAULT_EXHAUSTIVE_LIMIT = 18
DEFAULT_LOG_LEVEL = "WARNING"


@dataclass(frozen=True)
class Settings:
    """Runtime limits shared by every command."""

    closure_cap: int = DEFAULT_CLOSURE_CAP
    horizon_factor: int = DEFAULT_HORIZON_FACTOR
    default_trials: int = DEFAULT_TRIALS
    default_instances: int = DEFAULT_INSTANCES
    cover_doublings: int = DEFAULT_COVER_DOUBLINGS
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT
    log_level: str = DEFAULT_LOG_LEVEL


def _read_env(name: str) -> str | None:
    value = os.getenv(name)
    if value is None:
        return None
    cleaned = value.strip()
    return cleaned or None


def _positive_int(name: str, default: int) -> int:
    raw = _read_env(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise RuntimeError(f"`{name}` must be an integer, got {raw!r}.") from None
    if value < 1:
        raise RuntimeError(f"`{name}` must be positive, got {value}.")
    return value


def _log_level() -> str:
    level = (_read_env("EPISTEMIC_LOG_LEVEL") or DEFAULT_LOG_LEVEL).upper()
    if not isinstance(logging.getLevelName(level), int):
        raise RuntimeError(f"`EPISTEMIC_LOG_LEVEL` is not a logging level: {level!r}.")
    return level


def load_settings() -> Settings:
    return Settings(
        closure_cap=_positive_int("EPISTEMIC_CLOSURE_CAP", DEFAULT_CLOSURE_CAP),
        horizon_factor=_positive_int("EPISTEMIC_HORIZON_FACTOR", DEFAULT_HORIZON_FACTOR),
        default_trials=_positive_int("EPISTEMIC_DEFAULT_TRIALS", DEFAULT_TRIALS),
        default_instances=_positive_int("EPISTEMIC_DEFAULT_INSTANCES", DEFAULT_INSTANCES),
        cover_doublings=_positive_int("EPISTEMIC_COVER_DOUBLINGS", DEFAULT_COVER_DOUBLINGS),
        exhaustive_limit=_positive_int("EPISTEMIC_EXHAUSTIVE_LIMIT", DEFAULT_EXHAUSTIVE_LIMIT),
        log_level=_log_level(),
    )


def create_app() -> dict[str, Any]:
    """Create the workbench dependency container."""
    settings = load_settings()

    return {
        "settings": settings,
        "registry": {
            "fixtures": dict(FIXTURES),
            "axiom_sets": dict(AXIOM_SET_BY_CLASS),
        },
        "version": __version__,
    }
