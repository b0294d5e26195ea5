"""Command-line entry point.

Exit codes: 0 on success, 1 when a verification fails (rejected proof,
soundness violation, invalid tree file, disagreeing oracle), 2 on usage
errors and bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

from . import __version__
from .app import Settings, create_app
from .axioms.generator import GeneratorConfig, generate_system
from .axioms.schemas import SCHEMAS, axiom_set_for_classes
from .axioms.soundness import soundness_suite
from .errors import SearchBudgetExceeded, WorkbenchError
from .io import write_json_atomic, write_text_atomic
from .ktrees.runs import RUN_KINDS, derive_run, derived_system
from .ktrees.search import search_tree_sequence
from .ktrees.steps import TreeStep, check_step_chain, compression
from .ktrees.trees import KTree, is_ktree, tree_formula
from .logic.formula import to_text
from .logic.parser import parse
from .proofs.checker import check_proof
from .proofs.derivations import kt1_from_kt3
from .proofs.document import dump_proof, load_proof
from .properties.checkers import classify_report, default_horizon
from .properties.sequences import Lasso
from .systems.documents import dumps_system, load_system, parse_point, system_to_document
from .systems.evaluator import TruthTable
from .systems.fixtures import FIXTURES
from .tableau.decide import SAT_CLASSES, decide_sat
from .tableau.elimination import eliminate
from .tableau.extraction import acceptable_extension
from .tableau.premodel import PreModel, build_premodel, premodel_to_document
from .tableau.search import bounded_model_search

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class Report:
    """Collects text lines and a document for one command."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[str] = []
        self.document: dict[str, Any] = {}

    def text(self, line: str) -> None:
        self.lines.append(line)

    def emit(self) -> None:
        if self.fmt == "doc":
            print(json.dumps(self.document, indent=2, sort_keys=True))
        else:
            print("\n".join(self.lines))


def _classes(text: str) -> frozenset[str]:
    return frozenset(part.strip() for part in text.split(",") if part.strip()) - {"all"}


def _cmd_eval(args: argparse.Namespace, settings: Settings, report: Report) -> int:
    system = load_system(args.system)
    point = parse_point(system, args.point)
    formula = parse(args.formula, system.agents)
    table = TruthTable(system)
    value = table.value(point, formula)
    report.text(f"{to_text(formula)} at {system.point_label(point)}: {'true' if value else 'false'}")
    report.document = {"formula": to_text(formula), "point": args.point, "value": value}
    if args.table:
        report.text(table.render_text(formula))
        report.document["table"] = table.to_document(formula)
    return EXIT_OK


def _cmd_classify(args: argparse.Namespace, settings: Settings, report: Report) -> int:
    system = load_system(args.system)
    horizon = args.horizon or default_horizon(system, settings.horizon_factor)
    classification = classify_report(system, horizon)
    report.text(classification.render_text(system))
    report.document = classification.to_document()
    return EXIT_OK


def _cmd_axioms(args: argparse.Namespace, settings: Settings, report: Report) -> int:
    classes = _classes(args.klass)
    if args.schemas:
        schemas = [part.strip() for part in args.schemas.split(",") if part.strip()]
    else:
        schemas = sorted(axiom_set_for_classes(classes).axioms & set(SCHEMAS))
    config = GeneratorConfig(runs=args.runs, window=args.window, agents=args.agents)
    result = soundness_suite(
        classes,
        schemas,
        args.trials or settings.default_trials,
        config=config,
        seed=args.seed,
        instances=args.instances or settings.default_instances,
    )
    report.text(result.render_text())
    report.document = result.to_document()
    if args.csv:
        write_text_atomic(args.csv, result.to_csv())
    return EXIT_OK if result.ok else EXIT_FAILED


def _cmd_sat(args: argparse.Namespace, settings: Settings, report: Report) -> int:
    formula = parse(args.formula)
    result = decide_sat(formula, args.klass, cap=settings.closure_cap, cover_doublings=settings.cover_doublings)
    report.text(result.render_text())
    report.document = result.to_document()
    if args.model and result.system is not None:
        write_json_atomic(args.model, system_to_document(result.system))
    if args.dump_premodel and result.premodel is not None:
        write_json_atomic(args.dump_premodel, premodel_to_document(result.premodel))
    if args.corroborate and not result.satisfiable:
        outcome = bounded_model_search(
            formula, clocked=args.klass in ("sync", "sync_uis"), budget=2**settings.exhaustive_limit
        )
        report.text(outcome.render_text())
        report.document["corroboration"] = {
            "examined": outcome.examined,
            "truncated": outcome.truncated,
            "complete": outcome.complete,
        }
        if outcome.found:
            report.document["corroboration"]["model"] = system_to_document(outcome.system)
            return EXIT_FAILED
    return EXIT_OK


def _cmd_prove(args: argparse.Namespace, settings: Settings, report: Report) -> int:
    proof = kt1_from_kt3() if args.proof == "kt1_from_kt3" else load_proof(args.proof)
    verdict = check_proof(proof, allow_hypotheses=args.allow_hypotheses)
    report.text(verdict.render_text())
    report.document = verdict.to_document()
    return EXIT_OK if verdict.accepted else EXIT_FAILED


def _tree_premodel(formula_text: str, depth: int | None, settings: Settings) -> PreModel:
    return eliminate(build_premodel(parse(formula_text), depth=depth, cap=settings.closure_cap, flat=True))


def _load_tree_document(path: str) -> dict[str, Any]:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise WorkbenchError(f"{path}: cannot read tree document ({exc})") from exc


def _trees_from_document(document: dict[str, Any], k: int) -> tuple[list[KTree], list[TreeStep]]:
    trees = [KTree(frozenset(states), k) for states in document.get("trees", [])]
    steps = []
    for position, raw in enumerate(document.get("steps", [])):
        if position + 1 >= len(trees):
            raise WorkbenchError(f"step {position} has no target tree")
        f = {int(state): tuple(seq) for state, seq in raw.items()}
        steps.append(TreeStep(trees[position], trees[position + 1], f))
    return trees, steps


def _trees_search(args: argparse.Namespace, settings: Settings, report: Report) -> int:
    try:
        result = search_tree_sequence(
            parse(args.formula), budget=args.budget, max_steps=args.max_steps, depth=args.depth,
            cap=settings.closure_cap,
        )
    except SearchBudgetExceeded as error:
        partial = getattr(error, "partial", None)
        if partial is not None:
            report.text(partial.render_text())
            report.document = partial.to_document()
            report.emit()
        raise
    report.text(result.render_text())
    report.document = result.to_document()
    if args.out:
        write_json_atomic(args.out, result.to_document())
    return EXIT_OK


def _trees_check(args: argparse.Namespace, settings: Settings, report: Report) -> int:
    document = _load_tree_document(args.file)
    pm = _tree_premodel(args.formula, document.get("depth"), settings)
    trees, steps = _trees_from_document(document, pm.depth)
    failures = []
    for position, tree in enumerate(trees):
        verdict = is_ktree(pm, tree.states, tree.k)
        if not verdict:
            failures.append(f"tree {position}: {verdict.clause} ({verdict.detail})")
    chain = check_step_chain(pm, steps)
    if not chain:
        failures.append(f"steps: {chain.clause} ({chain.detail})")
    report.document = {"trees": len(trees), "steps": len(steps), "failures": failures}
    report.text(f"{len(trees)} trees, {len(steps)} steps: {'ok' if not failures else 'invalid'}")
    report.lines.extend(failures)
    return EXIT_FAILED if failures else EXIT_OK


def _trees_formula(args: argparse.Namespace, settings: Settings, report: Report) -> int:
    document = _load_tree_document(args.file)
    pm = _tree_premodel(args.formula, document.get("depth"), settings)
    trees, _ = _trees_from_document(document, pm.depth)
    if not 0 <= args.tree < len(trees):
        raise WorkbenchError(f"no tree {args.tree}; the file has {len(trees)}")
    text = to_text(tree_formula(pm, trees[args.tree], args.state))
    report.text(text)
    report.document = {"tree": args.tree, "state": args.state, "formula": text}
    return EXIT_OK


def _trees_derive(args: argparse.Namespace, settings: Settings, report: Report) -> int:
    result = search_tree_sequence(parse(args.formula), depth=args.depth, cap=settings.closure_cap)
    pm = result.premodel
    advance = lambda a, b: b in pm.successors.get(a, ())  # noqa: E731
    runs = []
    for seq in result.sequences().values():
        compressed = compression(seq, advance)
        if args.kind.startswith("nl"):
            lasso = acceptable_extension(pm, compressed)
        else:
            lasso = Lasso(compressed)
        runs.append(derive_run(pm, lasso, args.kind, args.horizon))
    if not runs:
        report.text(f"no runs: {to_text(result.psi)} has no live epsilon-state")
        return EXIT_FAILED
    system = derived_system(pm, runs)
    report.text(f"derived {len(runs)} {args.kind} runs (window {system.window})")
    report.document = system_to_document(system)
    if args.out:
        write_json_atomic(args.out, system_to_document(system))
    return EXIT_OK


def _cmd_fixtures(args: argparse.Namespace, settings: Settings, report: Report) -> int:
    out_dir = Path(args.out_dir)
    written = []
    for name, build in FIXTURES.items():
        written.append(write_text_atomic(out_dir / f"{name}.json", dumps_system(build())))
    proof = kt1_from_kt3()
    written.append(write_text_atomic(out_dir / "kt1_from_kt3.proof", dump_proof(proof)))
    for path in written:
        report.text(f"wrote {path}")
    report.document = {"written": [str(path) for path in written]}
    return EXIT_OK


def _cmd_gen(args: argparse.Namespace, settings: Settings, report: Report) -> int:
    config = GeneratorConfig(
        target=_classes(args.klass),
        runs=args.runs,
        window=args.window,
        agents=args.agents,
        props=tuple(part.strip() for part in args.props.split(",") if part.strip()),
        alphabet=args.alphabet,
        seed=args.seed,
    )
    system = generate_system(config)
    text = dumps_system(system)
    if args.out:
        write_text_atomic(args.out, text)
        report.text(f"wrote {args.out}")
    else:
        report.text(text.rstrip("\n"))
    report.document = system_to_document(system)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="epistemic-workbench", description="Epistemic temporal logic workbench.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--format", choices=("text", "doc"), default="text", help="report format")
    parser.add_argument("--verbose", "-v", action="store_true", help="log progress to stderr")
    subparsers = parser.add_subparsers(dest="verb", required=True)

    s = subparsers.add_parser("eval", help="evaluate a formula at a point")
    s.set_defaults(main=_cmd_eval)
    s.add_argument("--system", required=True, help="system file or fixture name")
    s.add_argument("--point", required=True, help="<run>,<time>")
    s.add_argument("--formula", required=True)
    s.add_argument("--table", action="store_true", help="also print the truth table of every subformula")

    s = subparsers.add_parser("classify", help="report which classes a system belongs to")
    s.set_defaults(main=_cmd_classify)
    s.add_argument("--system", required=True, help="system file or fixture name")
    s.add_argument("--horizon", type=int, default=None)

    s = subparsers.add_parser("axioms", help="check axiom soundness on generated systems")
    s.set_defaults(main=_cmd_axioms)
    s.add_argument("--class", dest="klass", default="all", help="comma separated, e.g. nl,sync")
    s.add_argument("--schemas", default="", help="comma separated schema ids; default is the class's axiom set")
    s.add_argument("--trials", type=int, default=None)
    s.add_argument("--instances", type=int, default=None)
    s.add_argument("--runs", type=int, default=3)
    s.add_argument("--window", type=int, default=4)
    s.add_argument("--agents", type=int, default=2)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--csv", default="", help="also write one CSV row per schema and trial")

    s = subparsers.add_parser("sat", help="decide satisfiability and produce a checked model")
    s.set_defaults(main=_cmd_sat)
    s.add_argument("--class", dest="klass", choices=SAT_CLASSES, default="all")
    s.add_argument("--formula", required=True)
    s.add_argument("--model", default="", help="write the model system here")
    s.add_argument("--dump-premodel", default="", help="write the pre-model document here")
    s.add_argument("--corroborate", action="store_true", help="search small systems when the verdict is UNSAT")

    s = subparsers.add_parser("prove", help="check a Hilbert-style proof file")
    s.set_defaults(main=_cmd_prove)
    s.add_argument("--proof", required=True, help="proof file, or kt1_from_kt3 for the built-in derivation")
    s.add_argument("--allow-hypotheses", action="store_true")

    trees = subparsers.add_parser("trees", help="k-tree sequences and derived runs")
    tree_verbs = trees.add_subparsers(dest="tree_verb", required=True)

    s = tree_verbs.add_parser("search", help="search for a tree sequence discharging obligations")
    s.set_defaults(main=_trees_search)
    s.add_argument("--formula", required=True)
    s.add_argument("--budget", type=int, default=10_000)
    s.add_argument("--max-steps", type=int, default=16)
    s.add_argument("--depth", type=int, default=None)
    s.add_argument("--out", default="")

    s = tree_verbs.add_parser("check", help="validate the trees and steps of a tree file")
    s.set_defaults(main=_trees_check)
    s.add_argument("--formula", required=True)
    s.add_argument("--file", required=True)

    s = tree_verbs.add_parser("formula", help="print the formula describing a tree from one state")
    s.set_defaults(main=_trees_formula)
    s.add_argument("--formula", required=True)
    s.add_argument("--file", required=True)
    s.add_argument("--tree", type=int, default=0)
    s.add_argument("--state", type=int, required=True)

    s = tree_verbs.add_parser("derive", help="derive runs from a tree sequence and dump the system")
    s.set_defaults(main=_trees_derive)
    s.add_argument("--formula", required=True)
    s.add_argument("--kind", choices=RUN_KINDS, default="pr")
    s.add_argument("--horizon", type=int, default=4)
    s.add_argument("--depth", type=int, default=None)
    s.add_argument("--out", default="")

    s = subparsers.add_parser("fixtures", help="write the shipped systems and the KT1 derivation")
    s.set_defaults(main=_cmd_fixtures)
    s.add_argument("--out-dir", required=True)

    s = subparsers.add_parser("gen", help="generate a random system of the given classes")
    s.set_defaults(main=_cmd_gen)
    s.add_argument("--class", dest="klass", default="all")
    s.add_argument("--runs", type=int, default=3)
    s.add_argument("--window", type=int, default=4)
    s.add_argument("--agents", type=int, default=1)
    s.add_argument("--props", default="p,q")
    s.add_argument("--alphabet", type=int, default=2)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out", default="")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        settings: Settings = create_app()["settings"]
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else settings.log_level,
        format="%(levelname)s %(name)s: %(message)s",
    )
    logger.debug("running %s", args.verb)
    report = Report(args.format)
    command: Callable[[argparse.Namespace, Settings, Report], int] = args.main
    try:
        code = command(args, settings, report)
    except (WorkbenchError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report.emit()
    return code


if __name__ == "__main__":
    raise SystemExit(main())
