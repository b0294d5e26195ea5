"""Soundness sweeps: schema instances checked on class-constrained systems."""

from __future__ import annotations

import csv
import io
import logging
import random
from dataclasses import dataclass, field, replace
from typing import Any, Iterable, Sequence

from ..logic.formula import Formula, to_text
from ..systems.documents import system_to_document
from ..systems.evaluator import TruthTable, valid_in_system
from ..systems.model import LassoSystem, Point
from .generator import GeneratorConfig, generate_system, seed_for
from .random_formulas import FormulaBounds, random_substitution
from .schemas import COMMON_AXIOMS, SCHEMAS, TAUTOLOGY_TEMPLATES, instantiate

logger = logging.getLogger(__name__)

CSV_FIELDS = ["schema", "trial", "instances", "violations", "formula", "point"]


@dataclass(frozen=True)
class Violation:
    schema: str
    trial: int
    formula: Formula
    point: Point
    system: LassoSystem


@dataclass(frozen=True)
class TrialRow:
    schema: str
    trial: int
    instances: int
    violations: int
    first: Violation | None = None


@dataclass(frozen=True)
class SoundnessReport:
    classes: frozenset[str]
    schemas: tuple[str, ...]
    trials: int
    seed: int
    rows: tuple[TrialRow, ...] = field(default_factory=tuple)

    @property
    def violations(self) -> list[Violation]:
        return [row.first for row in self.rows if row.first is not None]

    @property
    def ok(self) -> bool:
        return not any(row.violations for row in self.rows)

    def render_text(self) -> str:
        classes = ",".join(sorted(self.classes)) or "all"
        lines = [f"soundness over {classes}: {len(self.schemas)} schemas x {self.trials} trials (seed {self.seed})"]
        for row in self.rows:
            if row.first is None:
                lines.append(f"{row.schema} trial {row.trial}: ok ({row.instances} instances)")
                continue
            violation = row.first
            label = violation.system.point_label(violation.point)
            lines.append(
                f"{row.schema} trial {row.trial}: VIOLATION x{row.violations} at {label}: {to_text(violation.formula)}"
            )
        total = sum(row.violations for row in self.rows)
        lines.append(f"total violations: {total}")
        return "\n".join(lines)

    def to_document(self) -> dict[str, Any]:
        return {
            "classes": sorted(self.classes),
            "schemas": list(self.schemas),
            "trials": self.trials,
            "seed": self.seed,
            "ok": self.ok,
            "violations": [
                {
                    "schema": v.schema,
                    "trial": v.trial,
                    "formula": to_text(v.formula),
                    "point": [v.point.run, v.point.time],
                    "system": system_to_document(v.system),
                }
                for v in self.violations
            ],
        }

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.DictWriter(out, fieldnames=CSV_FIELDS)
        writer.writeheader()
        for row in self.rows:
            first = row.first
            writer.writerow(
                {
                    "schema": row.schema,
                    "trial": row.trial,
                    "instances": row.instances,
                    "violations": row.violations,
                    "formula": to_text(first.formula) if first else "",
                    "point": first.system.point_label(first.point) if first else "",
                }
            )
        return out.getvalue()


def random_instances(
    schema_id: str, rng: random.Random, count: int, bounds: FormulaBounds
) -> list[Formula]:
    schema = SCHEMAS[schema_id]
    instances = []
    for _ in range(count):
        agent = rng.randint(1, bounds.agents)
        template = rng.randrange(len(TAUTOLOGY_TEMPLATES))
        names = ("Φ1", "Φ2", "Φ3") if schema.semantic else schema.metavariables(agent, bounds.agents)
        substitution = random_substitution(rng, bounds, names)
        instances.append(instantiate(schema, substitution, agent, bounds.agents, template=template))
    return instances


def soundness_suite(
    classes: Iterable[str],
    schemas: Sequence[str],
    trials: int,
    config: GeneratorConfig | None = None,
    seed: int = 0,
    instances: int = 20,
    depth: int = 3,
) -> SoundnessReport:
    """Check random instances of each schema on freshly generated systems.

    Trial t uses the system generated from a seed derived from (seed, t),
    so any trial can be replayed on its own.
    """
    target = frozenset(classes) - {"all"}
    unknown = [schema for schema in schemas if schema not in SCHEMAS]
    if unknown:
        raise ValueError(f"unknown axiom schemas {unknown}")
    base = config or GeneratorConfig()
    allow_common = any(schema in COMMON_AXIOMS for schema in schemas)
    bounds = FormulaBounds(depth=depth, props=base.props, agents=base.agents, allow_common=allow_common)
    rows: list[TrialRow] = []
    for trial in range(trials):
        system = generate_system(replace(base, target=target, seed=seed_for(seed, "system", trial)))
        table = TruthTable(system)
        for schema_id in schemas:
            rng = random.Random(seed_for(seed, schema_id, trial))
            count = 0
            first: Violation | None = None
            for formula in random_instances(schema_id, rng, instances, bounds):
                verdict = valid_in_system(system, formula, table)
                if not verdict.valid:
                    count += 1
                    if first is None:
                        first = Violation(schema_id, trial, formula, verdict.counterexample, system)
            rows.append(TrialRow(schema_id, trial, instances, count, first))
            if count:
                logger.warning("%s has %s invalid instances in trial %s", schema_id, count, trial)
    report = SoundnessReport(target, tuple(schemas), trials, seed, tuple(rows))
    logger.info("soundness over %s: %s rows, ok=%s", sorted(target), len(rows), report.ok)
    return report
