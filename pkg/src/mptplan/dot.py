"""Graphviz export of causal graphs and (extended) domain transition graphs."""

from __future__ import annotations

from typing import Optional

from .compilation import CompiledTask, Dtg, build_extended_dtg
from .task import Task

GRAPH_KINDS = ("cg", "pruned-cg", "dtg", "xdtg")


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _variable(task: Task, ref: str) -> int:
    for i, var in enumerate(task.variables):
        if var.name == ref:
            return i
    if ref.isdigit() and int(ref) < len(task.variables):
        return int(ref)
    raise KeyError(f"no variable {ref!r}")


def condition_label(task: Task, condition) -> str:
    return ", ".join(task.fact_name(v, d) for v, d in condition)


def causal_graph_dot(compiled: CompiledTask, pruned: bool = False) -> str:
    task = compiled.task
    cg = compiled.causal_graph
    arcs = sorted(cg.pruned) if pruned else cg.arcs
    lines = [f"digraph {_quote('pruned-cg' if pruned else 'cg')} {{"]
    for i, var in enumerate(task.variables):
        lines.append(f"  v{i} [label={_quote(var.name)}];")
    for a, b in arcs:
        lines.append(f"  v{a} -> v{b} [label={_quote(str(cg.weights[(a, b)]))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dtg_dot(task: Task, dtg: Dtg, title: Optional[str] = None) -> str:
    var = task.variables[dtg.var]
    lines = [f"digraph {_quote(title or 'dtg:' + var.name)} {{"]
    for d, name in enumerate(var.domain):
        lines.append(f"  d{d} [label={_quote(name)}];")
    for t in dtg.transitions:
        label = condition_label(task, t.condition)
        label = f"{label}; w={t.weight}" if label else f"w={t.weight}"
        lines.append(f"  d{t.source} -> d{t.target} [label={_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(compiled: CompiledTask, kind: str) -> str:
    """``kind`` is ``cg``, ``pruned-cg``, ``dtg:<var>`` or ``xdtg:<var>`` (name or index)."""
    task = compiled.task
    if kind == "cg":
        return causal_graph_dot(compiled)
    if kind == "pruned-cg":
        return causal_graph_dot(compiled, pruned=True)
    base, _, ref = kind.partition(":")
    if base not in ("dtg", "xdtg") or not ref:
        raise ValueError(f"unknown graph kind {kind!r}")
    v = _variable(task, ref)
    dtg = compiled.dtgs[v]
    if base == "xdtg":
        if not task.variables[v].derived:
            raise ValueError(f"{task.variables[v].name} is not a derived variable")
        if not dtg.extended:
            dtg = build_extended_dtg(task, v)
    return dtg_dot(task, dtg, kind)
