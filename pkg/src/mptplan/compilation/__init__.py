"""Knowledge compilation: DTGs, causal graph, successor generator, axiom evaluator."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from ..task import Axiom, Effect, Operator, Task, merge
from .axiom_evaluator import AxiomEvaluator, evaluate_axioms_fast
from .causal_graph import CausalGraph, acyclic_ordering, build_causal_graph
from .dtg import (
    DnfSizeError,
    Dtg,
    Polarity,
    Transition,
    build_dtg,
    build_dtgs,
    build_extended_dtg,
    negate_dnf,
    prune_dtg,
    remove_dominated,
    trigger_dnf,
    usage_polarity,
)
from .successor_generator import (
    GeneratorNode,
    SelectorNode,
    SuccessorGenerator,
    build_successor_generator,
    generate_applicable,
    generator_leaves,
)


@dataclass(frozen=True)
class Reduction:
    task: Task
    variable_map: tuple[int, ...]   # reduced index -> original index
    operator_map: tuple[int, ...]
    axiom_map: tuple[int, ...]


def _changes(task: Task, op: Operator, eff: Effect) -> bool:
    """Whether the effect can ever change its variable (and so yields a DTG transition)."""
    cond = merge(op.precondition, eff.condition)
    if cond is None or task.variables[eff.var].size == 1:
        return False
    return eff.var not in cond or cond[eff.var] != eff.value


def prune_irrelevant(task: Task, cg: CausalGraph) -> Reduction:
    """Drop variables that are not causal-graph ancestors of a goal variable."""
    keep = sorted(cg.ancestors([v for v, _ in task.goal]))
    new_index = {old: new for new, old in enumerate(keep)}

    def remap(pairs):
        return tuple((new_index[v], d) for v, d in pairs)

    def mentions_only_kept(pairs) -> bool:
        return all(v in new_index for v, _ in pairs)

    variables = tuple(task.variables[v] for v in keep)
    initial = tuple(task.initial[v] for v in keep)
    operators, op_map = [], []
    for oi, op in enumerate(task.operators):
        effects = [e for e in op.effects if e.var in new_index and _changes(task, op, e)]
        if not effects:
            continue
        # relevant effects only depend on relevant variables (separability)
        assert mentions_only_kept(op.precondition)
        assert all(mentions_only_kept(e.condition) for e in effects)
        operators.append(Operator(
            op.name, remap(op.precondition),
            tuple(Effect(remap(e.condition), new_index[e.var], e.value) for e in effects)))
        op_map.append(oi)
    axioms, ax_map = [], []
    for ai, ax in enumerate(task.axioms):
        # a body requiring the head value itself can never fire first
        if ax.var in new_index and (ax.var, ax.value) not in ax.condition:
            axioms.append(Axiom(remap(ax.condition), new_index[ax.var], ax.value))
            ax_map.append(ai)
    reduced = Task(variables, initial, remap(task.goal), tuple(operators), tuple(axioms))
    return Reduction(reduced, tuple(keep), tuple(op_map), tuple(ax_map))


@dataclass(frozen=True)
class CompiledTask:
    """Everything the search and the heuristics need, built once per task.

    ``task`` is the relevance-reduced task the engines work on; plans over
    it are translated back with ``operator_map``.
    """

    task: Task
    original: Task
    variable_map: tuple[int, ...]
    operator_map: tuple[int, ...]
    polarity: dict[int, Polarity]
    dtgs: tuple[Dtg, ...]
    causal_graph: CausalGraph
    pruned_dtgs: tuple[Dtg, ...]
    successor_generator: SuccessorGenerator
    axiom_evaluator: AxiomEvaluator

    def to_original_plan(self, plan: Sequence[int]) -> list[int]:
        return [self.operator_map[o] for o in plan]

    def to_original_state(self, state) -> tuple:
        full = list(self.original.initial)
        for new, old in enumerate(self.variable_map):
            full[old] = state[new]
        return tuple(full)

    def from_original_state(self, state) -> tuple:
        return tuple(state[old] for old in self.variable_map)


def compile_task(task: Task, prune: bool = True, order: Optional[Sequence[int]] = None) -> CompiledTask:
    if prune:
        dtgs = build_dtgs(task)
        reduction = prune_irrelevant(task, build_causal_graph(task, dtgs))
    else:
        n = len(task.variables)
        reduction = Reduction(task, tuple(range(n)), tuple(range(len(task.operators))),
                              tuple(range(len(task.axioms))))
    reduced = reduction.task
    polarity = usage_polarity(reduced)
    dtgs = build_dtgs(reduced, polarity)
    cg = acyclic_ordering(build_causal_graph(reduced, dtgs), order)
    pruned = tuple(prune_dtg(d, cg.level) for d in dtgs)
    return CompiledTask(
        task=reduced,
        original=task,
        variable_map=reduction.variable_map,
        operator_map=reduction.operator_map,
        polarity=polarity,
        dtgs=tuple(dtgs),
        causal_graph=cg,
        pruned_dtgs=pruned,
        successor_generator=build_successor_generator(reduced),
        axiom_evaluator=AxiomEvaluator(reduced),
    )


def prune_dtgs(compiled: CompiledTask) -> tuple[Dtg, ...]:
    return tuple(prune_dtg(d, compiled.causal_graph.level) for d in compiled.dtgs)


__all__ = [
    "AxiomEvaluator", "CausalGraph", "CompiledTask", "DnfSizeError", "Dtg", "GeneratorNode",
    "Polarity", "Reduction", "SelectorNode", "SuccessorGenerator", "Transition",
    "acyclic_ordering", "build_causal_graph", "build_dtg", "build_dtgs", "build_extended_dtg",
    "build_successor_generator", "compile_task", "evaluate_axioms_fast", "generate_applicable",
    "generator_leaves", "negate_dnf", "prune_dtg", "prune_dtgs", "prune_irrelevant",
    "remove_dominated", "trigger_dnf", "usage_polarity"
]
