"""Focused iterative-broadening search.

Each unsatisfied goal gets its own reach-one-goal sub-search; they run
interleaved one expansion at a time, and the first to succeed commits its
plan fragment. A sub-search for ``v = d`` is a sequence of uniform-cost
searches in which operators are charged ``1 + md`` and forbidden when
their modification distance ``md`` with respect to ``v`` exceeds the
current threshold.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from ..compilation import CausalGraph, CompiledTask
from ..heuristics import INFINITY
from ..task import Operator, PartialAssignment, State, holds, validate_plan
from .common import (
    FAILURE,
    PLAN_FOUND,
    RESOURCE_LIMIT,
    Budget,
    Engine,
    SearchConfig,
    SearchResult,
    Statistics,
    successors,
)


def modification_distance(cg: CausalGraph, op: Operator, v: int) -> float:
    dist = cg.distances_to(v)
    return min((dist[u] for u in op.affected), default=INFINITY)


def operator_cost(md: float) -> float:
    return 1 + md


@dataclass
class ReachResult:
    fragment: Optional[list[int]]
    state: Optional[State] = None
    threshold: Optional[int] = None
    expansions: int = 0


class ReachOneGoal:
    """Steppable reach-one-goal for ``v = d`` from ``start``.

    The goal test requires ``protected`` as well; with ``protect`` set,
    successors violating a protected pair are never generated.
    """

    def __init__(self, compiled: CompiledTask, start: State, goal: tuple[int, int],
                 protected: PartialAssignment = (), protect: bool = True,
                 distances: Optional[list[float]] = None):
        self.compiled = compiled
        self.task = compiled.task
        self.start = start
        self.goal = goal
        self.protected = tuple(protected)
        self.protect = protect
        if distances is None:
            distances = [modification_distance(compiled.causal_graph, op, goal[0]) for op in self.task.operators]
        self.md = distances
        finite = [m for m in distances if m != INFINITY]
        self.max_threshold = int(max(finite, default=0))
        self.threshold = 0
        self.expansions = 0
        self.generations = 0
        # operators applied per threshold, for auditing the md bound
        self.applied: dict[int, set[int]] = {}
        self._reset()

    def _reset(self) -> None:
        self._counter = itertools.count()
        self._heap = [(0, next(self._counter), self.start)]
        self._best = {self.start: 0}
        self._parents: dict[State, tuple[Optional[State], Optional[int]]] = {self.start: (None, None)}
        self._closed: set[State] = set()
        self.applied.setdefault(self.threshold, set())

    def _is_goal(self, ext) -> bool:
        return ext[self.goal[0]] == self.goal[1] and holds(self.protected, ext)

    def step(self) -> Optional[ReachResult]:
        """One expansion; a result means success (fragment) or final failure (None fragment)."""
        while self._heap:
            cost, _, state = heapq.heappop(self._heap)
            if state in self._closed:
                continue
            self._closed.add(state)
            ext = self.compiled.axiom_evaluator.evaluate(state)
            if self._is_goal(ext):
                fragment = []
                s = state
                while self._parents[s][0] is not None:
                    parent, op = self._parents[s]
                    fragment.append(op)
                    s = parent
                fragment.reverse()
                return ReachResult(fragment, state, self.threshold, self.expansions)
            self.expansions += 1
            for o, child in successors(self.compiled, state, ext):
                md = self.md[o]
                if md > self.threshold:
                    continue
                self.generations += 1
                if self.protect and self.protected:
                    if not holds(self.protected, self.compiled.axiom_evaluator.evaluate(child)):
                        continue
                new = cost + operator_cost(md)
                if new < self._best.get(child, INFINITY):
                    self._best[child] = new
                    self._parents[child] = (state, o)
                    self.applied[self.threshold].add(o)
                    heapq.heappush(self._heap, (new, next(self._counter), child))
            return None
        if self.threshold >= self.max_threshold:
            return ReachResult(None, None, self.threshold, self.expansions)
        self.threshold += 1
        self._reset()
        return None


def reach_one_goal(compiled: CompiledTask, state: State, goal: tuple[int, int],
                   protected: PartialAssignment = (), budget: Optional[int] = None,
                   protect: bool = True) -> ReachResult:
    search = ReachOneGoal(compiled, state, goal, protected, protect)
    while budget is None or search.expansions < budget:
        result = search.step()
        if result is not None:
            return result
    return ReachResult(None, None, search.threshold, search.expansions)


@dataclass
class PassReport:
    protected: bool
    outcome: str
    goals_committed: int
    plan_length: int


class Fibs(Engine):
    def __init__(self, compiled: CompiledTask, budget: Optional[Budget] = None):
        self.compiled = compiled
        self.task = compiled.task
        self.budget = budget or Budget()
        self.stats = Statistics()
        self.passes: list[PassReport] = []
        self.distances = {v: [modification_distance(compiled.causal_graph, op, v) for op in self.task.operators]
                          for v, _ in self.task.goal}
        self._begin_pass(protect=True)

    def _begin_pass(self, protect: bool) -> None:
        self.protect = protect
        self.state = self.task.initial
        self.plan: list[int] = []
        self.committed: list[tuple[int, int]] = []
        self._spawn()

    def _spawn(self) -> None:
        ext = self.compiled.axiom_evaluator.evaluate(self.state)
        # goals that hold already count as achieved and are protected from now on
        self.committed.extend(g for g in self.task.goal if g not in self.committed and ext[g[0]] == g[1])
        self.subsearches: list[ReachOneGoal] = [
            ReachOneGoal(self.compiled, self.state, g, self.committed, self.protect, self.distances[g[0]])
            for g in self.task.goal
            if g not in self.committed
        ]
        self._turn = 0

    def _end_pass(self, outcome: str) -> Optional[SearchResult]:
        self.passes.append(PassReport(self.protect, outcome, len(self.committed), len(self.plan)))
        if outcome == PLAN_FOUND:
            return self._result(PLAN_FOUND, self.plan)
        if self.protect:
            self._begin_pass(protect=False)
            return None
        return self._result(FAILURE)

    def _result(self, outcome: str, plan=None) -> SearchResult:
        info = {"passes": [p.__dict__.copy() for p in self.passes]}
        return SearchResult(outcome, plan, self.stats, info)

    def step(self) -> Optional[SearchResult]:
        if not self.subsearches:
            # every sub-search goal test includes the committed goals
            assert validate_plan(self.task, self.plan)
            return self._end_pass(PLAN_FOUND)
        if self.budget.exhausted():
            self.passes.append(PassReport(self.protect, RESOURCE_LIMIT, len(self.committed), len(self.plan)))
            return self._result(RESOURCE_LIMIT)
        self._turn %= len(self.subsearches)
        sub = self.subsearches[self._turn]
        before, generated = sub.expansions, sub.generations
        result = sub.step()
        spent = sub.expansions - before
        self.stats.expansions += spent
        self.stats.generations += sub.generations - generated
        self.budget.charge(spent)
        if result is None:
            self._turn += 1
            return None
        if result.fragment is None:
            del self.subsearches[self._turn]
            if not self.subsearches:
                return self._end_pass(FAILURE)
            return None
        self.plan.extend(result.fragment)
        self.state = result.state
        self.committed.append(sub.goal)
        self._spawn()
        return None


def fibs(compiled: CompiledTask, cfg: SearchConfig = SearchConfig(engine="fibs")) -> SearchResult:
    return Fibs(compiled, Budget(cfg.max_expansions, cfg.timeout)).run()


def forbidden_by_threshold(search: ReachOneGoal) -> Sequence[tuple[int, int]]:
    """(threshold, operator) pairs where an operator above the threshold was applied; empty when correct."""
    return [(t, o) for t, ops in search.applied.items() for o in ops if search.md[o] > t]
