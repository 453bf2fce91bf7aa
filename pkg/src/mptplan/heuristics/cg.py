"""The causal graph heuristic.

Costs ``cost_v(d, d')`` are computed top-down from the goal variables: a
Dijkstra search over the pruned DTG of ``v`` whose arc costs include the
cost of bringing the condition variables (immediate predecessors in the
pruned causal graph) from their values in the local state at the arc's
source to the values the arc needs. Those costs come from recursive calls.
Every reached value commits to the local state of the cheapest plan found
for it.
"""

from __future__ import annotations

import graphlib
import heapq
import itertools
from dataclasses import dataclass
from typing import Optional

from ..compilation import CompiledTask, Transition
from ..task import ExtendedState, State, extended_state, holds
from .base import INFINITY, BucketQueue, Heuristic, HeuristicResult

GLOBAL_CACHE_MAX_ANCESTORS = 5


@dataclass
class CostTable:
    var: int
    start: int
    costs: list[float]
    via: list[Optional[Transition]]
    local: list[Optional[dict[int, int]]]

    def path(self, target: int) -> list[Transition]:
        """Transitions from ``start`` to ``target`` in order."""
        out = []
        x = target
        while x != self.start:
            t = self.via[x]
            out.append(t)
            x = t.source
        out.reverse()
        return out


class CausalGraphHeuristic(Heuristic):
    name = "cg"
    sound_dead_ends = False

    def __init__(self, compiled: CompiledTask, use_cache: bool = True, use_global_cache: bool = True):
        self.compiled = compiled
        self.task = compiled.task
        cg = compiled.causal_graph
        n = len(self.task.variables)
        self.preds = [cg.predecessors(v, pruned=True) for v in range(n)]
        self.ancestors = [sorted(cg.ancestors([v], pruned=True) - {v}) for v in range(n)]
        self.outgoing: list[list[list[Transition]]] = []
        for dtg in compiled.pruned_dtgs:
            out: list[list[Transition]] = [[] for _ in range(dtg.size)]
            # stable sort: within a bucket, lower target values are queued first
            for t in sorted(dtg.transitions, key=lambda t: t.target):
                out[t.source].append(t)
            self.outgoing.append(out)
        self.use_cache = use_cache
        self.use_global_cache = use_global_cache
        self.global_cache: dict[tuple, CostTable] = {}
        self._state_cache: dict[tuple[int, int], CostTable] = {}
        self._ext: ExtendedState = ()

    def evaluate(self, state: State, ext: Optional[ExtendedState] = None) -> HeuristicResult:
        if ext is None:
            ext = self.compiled.axiom_evaluator.evaluate(state)
        self._begin(ext)
        total: float = 0
        tables = []
        for v, goal in self.task.goal:
            table = self.compute_costs(v, ext[v])
            total += table.costs[goal]
            tables.append((v, goal, table))
        if total == INFINITY:
            return HeuristicResult(INFINITY)
        helpful: set[int] = set()
        visited: set[tuple[int, int]] = set()
        for v, goal, table in tables:
            if ext[v] != goal:
                self._collect_helpful(table, goal, helpful, visited)
        return HeuristicResult(total, tuple(sorted(helpful)))

    def _begin(self, ext: ExtendedState) -> None:
        self._ext = ext
        self._state_cache = {}

    def costs_in(self, state: State, v: int, d: int) -> CostTable:
        """``cost_v(d, .)`` in ``state``; a fresh per-state cache is used."""
        self._begin(self.compiled.axiom_evaluator.evaluate(state))
        return self.compute_costs(v, d)

    def compute_costs(self, v: int, d: int) -> CostTable:
        key = (v, d)
        if self.use_cache and key in self._state_cache:
            return self._state_cache[key]
        gkey = None
        if self.use_global_cache and len(self.ancestors[v]) <= GLOBAL_CACHE_MAX_ANCESTORS:
            gkey = (v, d, tuple(self._ext[u] for u in self.ancestors[v]))
            cached = self.global_cache.get(gkey)
            if cached is not None:
                if self.use_cache:
                    self._state_cache[key] = cached
                return cached
        table = self._dijkstra(v, d)
        if self.use_cache:
            self._state_cache[key] = table
        if gkey is not None:
            self.global_cache[gkey] = table
        return table

    def _dijkstra(self, v: int, d: int) -> CostTable:
        size = self.task.variables[v].size
        ext = self._ext
        costs: list[float] = [INFINITY] * size
        via: list[Optional[Transition]] = [None] * size
        local: list[Optional[dict[int, int]]] = [None] * size
        settled = [False] * size
        costs[d] = 0
        local[d] = {u: ext[u] for u in self.preds[v]}
        queue = BucketQueue()
        queue.push(0, d)
        while len(queue):
            cost, x = queue.pop()
            if settled[x] or cost > costs[x]:
                continue
            settled[x] = True
            here = local[x]
            for t in self.outgoing[v][x]:
                y = t.target
                if settled[y]:
                    continue
                step: float = t.weight
                for u, e in t.condition:
                    if here[u] != e:
                        step += self.compute_costs(u, here[u]).costs[e]
                        if step == INFINITY:
                            break
                if step == INFINITY:
                    continue
                new = cost + step
                if new < costs[y]:
                    costs[y] = new
                    via[y] = t
                    after = dict(here)
                    after.update(t.condition)
                    local[y] = after
                    queue.push(int(new), y)
        return CostTable(v, d, costs, via, local)

    def _collect_helpful(self, table: CostTable, target: int, found: set[int], visited: set[tuple[int, int]]) -> None:
        if (table.var, target) in visited:
            return
        visited.add((table.var, target))
        first = table.path(target)[0]
        ext = self._ext
        if first.operator is not None:
            _, oi, ei = first.origin
            op = self.task.operators[oi]
            if holds(op.precondition, ext) and holds(op.effects[ei].condition, ext):
                found.add(oi)
                return
        for u, e in first.condition:
            if ext[u] != e:
                sub = self.compute_costs(u, ext[u])
                if sub.costs[e] != INFINITY:
                    self._collect_helpful(sub, e, found, visited)


def compute_costs(compiled: CompiledTask, state: State, v: int, d: int, use_cache: bool = True) -> CostTable:
    return CausalGraphHeuristic(compiled, use_cache=use_cache, use_global_cache=False).costs_in(state, v, d)


def cg_heuristic(compiled: CompiledTask, state: State) -> HeuristicResult:
    return CausalGraphHeuristic(compiled).evaluate(state)


def cg_bottom_up_oracle(compiled: CompiledTask, state: State) -> dict[tuple[int, int], list[float]]:
    """All cost tables, computed bottom-up over a topological order of the pruned causal graph.

    Uses a heap keyed by (cost, insertion number) instead of buckets and
    reads condition costs from the already finished tables of lower
    variables; the greedy commitment rule and tie-breaking are the same.
    """
    task = compiled.task
    cg = compiled.causal_graph
    ext = extended_state(task, state)
    n = len(task.variables)
    sorter = graphlib.TopologicalSorter({v: set(cg.predecessors(v, pruned=True)) for v in range(n)})
    tables: dict[tuple[int, int], list[float]] = {}
    for v in sorter.static_order():
        preds = cg.predecessors(v, pruned=True)
        transitions = sorted(compiled.pruned_dtgs[v].transitions, key=lambda t: t.target)
        size = task.variables[v].size
        for d in range(size):
            costs = [INFINITY] * size
            costs[d] = 0
            local: list = [None] * size
            local[d] = {u: ext[u] for u in preds}
            done = [False] * size
            counter = itertools.count()
            heap = [(0, next(counter), d)]
            while heap:
                cost, _, x = heapq.heappop(heap)
                if done[x] or cost > costs[x]:
                    continue
                done[x] = True
                for t in transitions:
                    if t.source != x or done[t.target]:
                        continue
                    step = t.weight + sum(
                        tables[(u, local[x][u])][e] for u, e in t.condition if local[x][u] != e)
                    if cost + step < costs[t.target]:
                        costs[t.target] = cost + step
                        local[t.target] = {**local[x], **dict(t.condition)}
                        heapq.heappush(heap, (cost + step, next(counter), t.target))
            tables[(v, d)] = costs
    return tables
