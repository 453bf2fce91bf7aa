"""The FF heuristic for tasks with derived variables.

In the relaxation a variable can hold several values at once. Operator
effects and axioms add values; derived variables start at their actual
values and can additionally reach ⊥ through the arcs of their extended
DTGs. A relaxed plan is read off the first supporter of every reached
fact.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Optional

from ..compilation import CompiledTask
from ..task import UNDEFINED, ExtendedState, State, holds, merge
from .base import INFINITY, Heuristic, HeuristicResult

Fact = tuple[int, int]


@dataclass(frozen=True)
class UnaryAction:
    precondition: tuple[Fact, ...]
    effect: Fact
    operator: Optional[int]   # None for axioms and negation arcs
    cost: int


def unary_actions(compiled: CompiledTask) -> list[UnaryAction]:
    """Operators first, in index order, then axioms, then ⊥-arcs."""
    task = compiled.task
    out = []
    for oi, op in enumerate(task.operators):
        for eff in op.effects:
            pre = merge(op.precondition, eff.condition)
            if pre is not None:
                out.append(UnaryAction(tuple(sorted(pre.items())), (eff.var, eff.value), oi, 1))
    for ax in task.axioms:
        body = merge(ax.condition)
        if body is not None:
            out.append(UnaryAction(tuple(sorted(body.items())), (ax.var, ax.value), None, 0))
    for dtg in compiled.dtgs:
        if dtg.extended:
            seen = set()
            for t in dtg.transitions:
                key = (t.source, t.condition)
                if t.origin[0] == "negation" and key not in seen:
                    seen.add(key)
                    pre = tuple(sorted(t.condition + ((dtg.var, t.source),)))
                    out.append(UnaryAction(pre, (dtg.var, UNDEFINED), None, 0))
    return out


class FFHeuristic(Heuristic):
    name = "ff"
    sound_dead_ends = True

    def __init__(self, compiled: CompiledTask):
        self.compiled = compiled
        self.task = compiled.task
        self.actions = unary_actions(compiled)
        self.users: dict[Fact, list[int]] = {}
        for i, a in enumerate(self.actions):
            for fact in a.precondition:
                self.users.setdefault(fact, []).append(i)
        self.unconditional = [i for i, a in enumerate(self.actions) if not a.precondition]

    def explore(self, ext: ExtendedState, stop_at_goal: bool = True) -> dict[Fact, Optional[int]]:
        """Reached facts mapped to the index of their supporting action (None: true in ``ext``).

        Facts are settled in order of (layer, supporting action index); the
        supporter is the one that settled the fact, so support never cycles.
        """
        actions = self.actions
        remaining = [len(a.precondition) for a in actions]
        layer = [0] * len(actions)
        supporter: dict[Fact, Optional[int]] = {}
        heap: list[tuple[int, int, Fact]] = [(0, -1, (v, d)) for v, d in enumerate(ext)]
        for i in self.unconditional:
            heap.append((actions[i].cost, i, actions[i].effect))
        heapq.heapify(heap)
        goals = set(self.task.goal)
        open_goals = len(goals)
        while heap:
            level, i, fact = heapq.heappop(heap)
            if fact in supporter:
                continue
            supporter[fact] = None if i < 0 else i
            if fact in goals:
                open_goals -= 1
                if stop_at_goal and open_goals == 0:
                    break
            for j in self.users.get(fact, ()):
                remaining[j] -= 1
                layer[j] = max(layer[j], level)
                if remaining[j] == 0 and actions[j].effect not in supporter:
                    heapq.heappush(heap, (layer[j] + actions[j].cost, j, actions[j].effect))
        return supporter

    def relaxed_plan(self, ext: ExtendedState) -> Optional[list[int]]:
        supporter = self.explore(ext)
        if any(g not in supporter for g in self.task.goal):
            return None
        plan: list[int] = []
        chosen: set[int] = set()
        marked: set[Fact] = set()
        stack = list(self.task.goal)
        while stack:
            fact = stack.pop()
            if fact in marked:
                continue
            marked.add(fact)
            i = supporter[fact]
            if i is None:
                continue
            a = self.actions[i]
            if a.operator is not None and a.operator not in chosen:
                chosen.add(a.operator)
                plan.append(a.operator)
            stack.extend(a.precondition)
        return plan

    def evaluate(self, state: State, ext: Optional[ExtendedState] = None) -> HeuristicResult:
        if ext is None:
            ext = self.compiled.axiom_evaluator.evaluate(state)
        plan = self.relaxed_plan(ext)
        if plan is None:
            return HeuristicResult(INFINITY)
        ops = self.task.operators
        helpful = tuple(sorted(o for o in plan if holds(ops[o].precondition, ext)))
        return HeuristicResult(len(plan), helpful, tuple(plan))


def ff_heuristic(compiled: CompiledTask, state: State) -> HeuristicResult:
    return FFHeuristic(compiled).evaluate(state)
