"""Backtrack-free planning for tasks with an acyclic causal graph and strongly connected DTGs.

Goals are achieved for causal-graph sinks first. Each value change of a
variable follows a path in its DTG; before a transition is taken its
conditions are achieved recursively, descendants before ancestors, so a
later subplan never touches a value set by an earlier one.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

import networkx as nx

from ..compilation import Dtg, Transition, build_causal_graph, build_dtgs
from ..task import Task, apply, holds, merge


@dataclass
class EasyResult:
    plan: Optional[list[int]]
    reason: str = ""
    dtg_searches: int = 0
    backtracks: int = 0

    @property
    def applicable(self) -> bool:
        return self.plan is not None


def check_easy_conditions(task: Task) -> tuple[str, Optional[object], Optional[list[Dtg]]]:
    """Empty reason string iff the task meets the conditions; also returns the CG and DTGs."""
    if task.derived:
        return "task has derived variables", None, None
    for op in task.operators:
        for eff in op.effects:
            if merge(op.precondition, eff.condition) is None:
                return f"operator {op.name} has a trivially false condition", None, None
    dtgs = build_dtgs(task)
    cg = build_causal_graph(task, dtgs)
    if not cg.is_acyclic():
        cycle = nx.find_cycle(cg.to_networkx())
        names = " -> ".join(task.variables[a].name for a, _ in cycle)
        return f"causal graph is cyclic ({names} -> {task.variables[cycle[0][0]].name})", cg, dtgs
    for dtg in dtgs:
        g = nx.DiGraph()
        g.add_nodes_from(range(dtg.size))
        g.add_edges_from((t.source, t.target) for t in dtg.transitions)
        if not nx.is_strongly_connected(g):
            return f"DTG of {task.variables[dtg.var].name} is not strongly connected", cg, dtgs
    return "", cg, dtgs


def sink_order(num_vars: int, arcs) -> list[int]:
    """Repeatedly remove the lowest-index sink."""
    out_deg = [0] * num_vars
    preds: dict[int, list[int]] = {}
    for a, b in arcs:
        out_deg[a] += 1
        preds.setdefault(b, []).append(a)
    remaining = set(range(num_vars))
    order = []
    while remaining:
        v = min(u for u in remaining if out_deg[u] == 0)
        order.append(v)
        remaining.remove(v)
        for u in preds.get(v, ()):
            out_deg[u] -= 1
    return order


class _Solver:
    def __init__(self, task: Task, dtgs: list[Dtg], order: list[int]):
        self.task = task
        self.dtgs = dtgs
        self.rank = {v: i for i, v in enumerate(order)}
        self.state = task.initial
        self.plan: list[int] = []
        self.dtg_searches = 0

    def path(self, v: int, target: int) -> list[Transition]:
        self.dtg_searches += 1
        start = self.state[v]
        via: dict[int, Optional[Transition]] = {start: None}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            if x == target:
                break
            for t in self.dtgs[v].transitions:
                if t.source == x and t.target not in via:
                    via[t.target] = t
                    queue.append(t.target)
        out = []
        x = target
        while via[x] is not None:
            out.append(via[x])
            x = via[x].source
        out.reverse()
        return out

    def achieve_all(self, pairs) -> None:
        for u, e in sorted(pairs, key=lambda p: self.rank[p[0]]):
            self.achieve(u, e)

    def achieve(self, v: int, target: int) -> None:
        if self.state[v] == target:
            return
        for t in self.path(v, target):
            self.achieve_all([(u, e) for u, e in t.condition if u != v])
            _, oi, _ = t.origin
            op = self.task.operators[oi]
            assert holds(op.precondition, self.state)
            self.state = apply(self.task, self.state, op, self.state)
            self.plan.append(oi)
            assert self.state[v] == t.target


def solve_easy_mpt(task: Task) -> EasyResult:
    reason, cg, dtgs = check_easy_conditions(task)
    if reason:
        return EasyResult(None, reason)
    solver = _Solver(task, dtgs, sink_order(len(task.variables), cg.weights))
    solver.achieve_all(task.goal)
    return EasyResult(solver.plan, "", solver.dtg_searches, 0)
