"""Command-line frontend: ``plan``, ``compile``, ``validate`` and ``stats``."""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from .compilation import DnfSizeError, compile_task
from .dot import export_dot
from .search import ENGINES, PREFERRED_MODES, SearchConfig, make_engine
from .search.common import FAILURE, PLAN_FOUND, RESOURCE_LIMIT, UNSOLVABLE
from .task import Task, validate_plan
from .textio import MptSemanticError, MptSyntaxError, PlanFormatError, parse_mpt, parse_plan, write_plan

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_LIMIT = 2
EXIT_INPUT = 3

OUTCOME_STATUS = {PLAN_FOUND: EXIT_OK, UNSOLVABLE: EXIT_NEGATIVE, RESOURCE_LIMIT: EXIT_LIMIT, FAILURE: EXIT_LIMIT}


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mptplan", description="Planner for multi-valued planning tasks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("plan", help="search for a plan")
    p.add_argument("task")
    p.add_argument("--engine", choices=ENGINES, default="mhbfs")
    p.add_argument("--preferred", choices=PREFERRED_MODES, default="ht+ha")
    p.add_argument("--heuristic", choices=("cg", "ff", "both"), default=None,
                   help="default: cg for gbfs, both otherwise")
    p.add_argument("--timeout", type=float, default=None, metavar="SEC")
    p.add_argument("--max-expansions", type=int, default=None)
    p.add_argument("--plan-out", default=None, metavar="FILE")
    p.add_argument("--report-out", default=None, metavar="FILE")
    p.add_argument("--timings", action="store_true", help="include wall-clock times in the report")

    c = sub.add_parser("compile", help="compile a task and optionally export a graph")
    c.add_argument("task")
    c.add_argument("--dot", default=None, metavar="{cg|pruned-cg|dtg:<var>|xdtg:<var>}")
    c.add_argument("--out", default=None, metavar="FILE")

    v = sub.add_parser("validate", help="check a plan file against a task")
    v.add_argument("task")
    v.add_argument("plan")

    s = sub.add_parser("stats", help="print task and causal graph statistics")
    s.add_argument("task")
    return parser


def load_task(path: str) -> Task:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return parse_mpt(text)
    except (MptSyntaxError, MptSemanticError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _write(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def format_report(pairs: Sequence[tuple[str, object]]) -> str:
    return "".join(f"{k}={v}\n" for k, v in pairs)


def cmd_plan(args) -> int:
    task = load_task(args.task)
    heuristic = args.heuristic or ("cg" if args.engine == "gbfs" else "both")
    if args.engine == "gbfs" and heuristic == "both":
        raise InputError("gbfs uses a single heuristic; choose --heuristic cg or ff")
    cfg = SearchConfig(engine=args.engine, preferred=args.preferred, heuristic=heuristic,
                       max_expansions=args.max_expansions, timeout=args.timeout)
    t0 = time.perf_counter()
    try:
        compiled = compile_task(task)
    except DnfSizeError as exc:
        raise InputError(str(exc)) from exc
    t1 = time.perf_counter()
    result = make_engine(compiled, cfg).run()
    t2 = time.perf_counter()

    plan = compiled.to_original_plan(result.plan) if result.plan is not None else None
    if plan is not None:
        assert validate_plan(task, plan)
    report: list[tuple[str, object]] = [
        ("outcome", result.outcome),
        ("engine", cfg.engine),
        ("heuristic", heuristic if cfg.engine in ("gbfs", "mhbfs") else "-"),
        ("preferred", cfg.preferred if cfg.engine in ("gbfs", "mhbfs") else "-"),
        ("plan_length", len(plan) if plan is not None else "-"),
        ("expansions", result.stats.expansions),
        ("generations", result.stats.generations),
        ("evaluations", result.stats.evaluations),
        ("dead_ends", result.stats.dead_ends),
        ("restarts", result.stats.restarts),
    ]
    for i, p in enumerate(result.info.get("passes", []), 1):
        report.append((f"fibs_pass_{i}", f"{'protected' if p['protected'] else 'unprotected'}:{p['outcome']}:"
                                         f"goals={p['goals_committed']}"))
    if "winner" in result.info:
        report.append(("portfolio_winner", result.info["winner"] or "-"))
    if args.timings:
        report.append(("compile_time", f"{t1 - t0:.6f}"))
        report.append(("search_time", f"{t2 - t1:.6f}"))
    text = format_report(report)
    if args.report_out:
        Path(args.report_out).write_text(text, encoding="utf-8")
    if plan is not None and args.plan_out:
        Path(args.plan_out).write_text(write_plan(task, plan), encoding="utf-8")

    out = sys.stdout
    if plan is not None:
        out.write(f"Solution found: {len(plan)} steps.\n")
        if not args.plan_out:
            out.write(write_plan(task, plan))
    else:
        out.write(f"No plan: {result.outcome}.\n")
    out.write(text)
    return OUTCOME_STATUS[result.outcome]


def cmd_compile(args) -> int:
    task = load_task(args.task)
    try:
        compiled = compile_task(task, prune=False)
        if args.dot is None:
            text = format_report(_stats(compiled))
        else:
            text = export_dot(compiled, args.dot)
    except (KeyError, ValueError, DnfSizeError) as exc:
        raise InputError(str(exc).strip("'\"")) from exc
    _write(args.out, text)
    return EXIT_OK


def cmd_validate(args) -> int:
    task = load_task(args.task)
    try:
        plan = parse_plan(task, Path(args.plan).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {args.plan}: {exc.strerror}") from exc
    except PlanFormatError as exc:
        raise InputError(f"{args.plan}: {exc}") from exc
    check = validate_plan(task, plan)
    if check.valid:
        print(f"valid plan of length {len(plan)}")
        return EXIT_OK
    if check.failed_step == len(plan):
        print(f"invalid plan: goal not satisfied after all {len(plan)} steps")
    else:
        print(f"invalid plan: step {check.failed_step + 1} fails: {check.reason}")
    print(f"failed_step={check.failed_step}")
    return EXIT_NEGATIVE


def _stats(compiled) -> list[tuple[str, object]]:
    task = compiled.task
    cg = compiled.causal_graph
    return [
        ("variables", len(task.variables)),
        ("fluents", len(task.fluents)),
        ("derived", len(task.derived)),
        ("operators", len(task.operators)),
        ("axioms", len(task.axioms)),
        ("axiom_layers", len(task.axiom_layers())),
        ("cg_arcs", len(cg.weights)),
        ("sccs", len(cg.components)),
        ("nontrivial_sccs", sum(1 for comp in cg.components if len(comp) > 1)),
        ("pruned_arcs", len(cg.weights) - len(cg.pruned)),
        ("acyclic", str(cg.is_acyclic()).lower()),
        ("extended_dtgs", sum(1 for d in compiled.dtgs if d.extended)),
    ]


def cmd_stats(args) -> int:
    task = load_task(args.task)
    try:
        compiled = compile_task(task, prune=False)
    except DnfSizeError as exc:
        raise InputError(str(exc)) from exc
    sys.stdout.write(format_report(_stats(compiled)))
    return EXIT_OK


COMMANDS = {"plan": cmd_plan, "compile": cmd_compile, "validate": cmd_validate, "stats": cmd_stats}


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        print(f"mptplan: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run_cli())
