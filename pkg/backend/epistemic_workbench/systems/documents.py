"""JSON system documents and point references."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from ..errors import SystemFormatError
from .fixtures import FIXTURES
from .model import Cell, LassoSystem, Point, RunTemplate


def system_to_document(system: LassoSystem) -> dict[str, Any]:
    props = sorted(system.props)
    return {
        "m": system.agents,
        "clocked": system.clocked,
        "prefix_len": system.prefix_len,
        "period": system.period,
        "props": props,
        "runs": [
            {
                "name": run.name,
                "cells": [
                    {
                        "env": cell.env,
                        "locals": list(cell.locals),
                        "val": {prop: prop in cell.valuation for prop in props},
                    }
                    for cell in run.cells
                ],
            }
            for run in system.runs
        ],
    }


def _require(document: dict[str, Any], key: str, kind: type | tuple[type, ...]) -> Any:
    if key not in document:
        raise SystemFormatError(f"system document is missing `{key}`")
    value = document[key]
    if not isinstance(value, kind) or (isinstance(value, bool) and kind is int):
        raise SystemFormatError(f"`{key}` has the wrong type: {value!r}")
    return value


def system_from_document(document: dict[str, Any]) -> LassoSystem:
    if not isinstance(document, dict):
        raise SystemFormatError("system document must be an object")
    agents = _require(document, "m", int)
    clocked = _require(document, "clocked", bool)
    prefix_len = _require(document, "prefix_len", int)
    period = _require(document, "period", int)
    props = frozenset(_require(document, "props", list))
    runs = []
    for index, raw_run in enumerate(_require(document, "runs", list), start=1):
        if not isinstance(raw_run, dict):
            raise SystemFormatError(f"run {index} must be an object")
        cells = []
        for raw_cell in _require(raw_run, "cells", list):
            if not isinstance(raw_cell, dict):
                raise SystemFormatError(f"run {index} has a malformed cell")
            valuation = _require(raw_cell, "val", dict)
            missing = props - set(valuation)
            if missing:
                raise SystemFormatError(f"run {index} has a cell without values for {sorted(missing)}")
            cells.append(
                Cell(
                    str(_require(raw_cell, "env", (str, int))),
                    tuple(str(token) for token in _require(raw_cell, "locals", list)),
                    frozenset(prop for prop, value in valuation.items() if value),
                )
            )
        runs.append(RunTemplate(tuple(cells), str(raw_run.get("name") or f"r{index}")))
    return LassoSystem(agents, clocked, prefix_len, period, tuple(runs), props)


def dumps_system(system: LassoSystem) -> str:
    return json.dumps(system_to_document(system), indent=2) + "\n"


def load_system(reference: str | Path) -> LassoSystem:
    """Load a system file, or a shipped fixture by name."""
    if str(reference) in FIXTURES:
        return FIXTURES[str(reference)]()
    path = Path(reference)
    if not path.exists():
        raise SystemFormatError(f"no system file or fixture named {str(reference)!r}")
    try:
        document = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SystemFormatError(f"{path}: invalid JSON ({exc.msg})") from exc
    return system_from_document(document)


def parse_point(system: LassoSystem, text: str) -> Point:
    """Parse ``<run name>,<time>``."""
    name, sep, time_text = text.partition(",")
    if not sep:
        raise SystemFormatError(f"point must look like `r1,0`, got {text!r}")
    try:
        time = int(time_text.strip())
    except ValueError:
        raise SystemFormatError(f"point time must be an integer, got {time_text!r}") from None
    if time < 0:
        raise SystemFormatError("point time must be non-negative")
    return Point(system.run_index(name.strip()), time)
