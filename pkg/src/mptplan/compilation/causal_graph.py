"""Causal graphs, goal relevance and acyclic pruning."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

import networkx as nx

from ..task import Task
from .dtg import Dtg


@dataclass
class CausalGraph:
    """Weighted variable dependency graph.

    ``weights[(u, v)]`` counts the distinct operators and axioms inducing
    the arc. ``level`` and ``pruned`` are filled in by ``acyclic_ordering``;
    a lower level means lower in the hierarchy (fewer dependencies).
    """

    num_vars: int
    weights: dict[tuple[int, int], int]
    level: Optional[list[int]] = None
    pruned: Optional[set[tuple[int, int]]] = None
    components: list[list[int]] = field(default_factory=list)

    @property
    def arcs(self) -> list[tuple[int, int]]:
        return sorted(self.weights)

    def successors(self, v: int) -> list[int]:
        return sorted(b for a, b in self.weights if a == v)

    def predecessors(self, v: int, pruned: bool = False) -> list[int]:
        arcs = self.pruned if pruned else self.weights
        return sorted(a for a, b in arcs if b == v)

    def ancestors(self, vars_: Sequence[int], pruned: bool = False) -> set[int]:
        """``vars_`` together with everything that has a path into them."""
        arcs = self.pruned if pruned else self.weights
        preds: dict[int, list[int]] = {}
        for a, b in arcs:
            preds.setdefault(b, []).append(a)
        seen = set(vars_)
        queue = deque(vars_)
        while queue:
            v = queue.popleft()
            for u in preds.get(v, ()):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        return seen

    def to_networkx(self, pruned: bool = False) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(self.num_vars))
        arcs = self.pruned if pruned else self.weights
        for a, b in sorted(arcs):
            g.add_edge(a, b, weight=self.weights[(a, b)])
        return g

    def is_acyclic(self) -> bool:
        return nx.is_directed_acyclic_graph(self.to_networkx())

    def distances_to(self, target: int) -> list[float]:
        """Directed arc-count distance from every variable to ``target``."""
        preds: dict[int, list[int]] = {}
        for a, b in self.weights:
            preds.setdefault(b, []).append(a)
        dist = [float("inf")] * self.num_vars
        dist[target] = 0
        queue = deque([target])
        while queue:
            v = queue.popleft()
            for u in preds.get(v, ()):
                if dist[u] == float("inf"):
                    dist[u] = dist[v] + 1
                    queue.append(u)
        return dist


def build_causal_graph(task: Task, dtgs: Sequence[Dtg]) -> CausalGraph:
    inducers: dict[tuple[int, int], set] = {}
    for dtg in dtgs:
        target = dtg.var
        for t in dtg.transitions:
            for u, _ in t.condition:
                if u != target:
                    inducers.setdefault((u, target), set()).update(t.inducers())
    for oi, op in enumerate(task.operators):
        affected = op.affected
        for a in affected:
            for b in affected:
                if a != b:
                    inducers.setdefault((a, b), set()).add(("op", oi))
    weights = {arc: len(who) for arc, who in sorted(inducers.items())}
    return CausalGraph(len(task.variables), weights)


def acyclic_ordering(cg: CausalGraph, order: Optional[Sequence[int]] = None) -> CausalGraph:
    """Compute ``cg.level`` and the acyclic arc subset ``cg.pruned`` in place.

    Components are laid out in topological order. Inside a component the
    vertex with the least cumulated weight of incoming arcs from the
    remaining component vertices goes next (ties: lowest index). An explicit
    ``order`` (lowest level first) overrides the computation.
    """
    g = cg.to_networkx()
    condensed = nx.condensation(g)
    members = {c: sorted(condensed.nodes[c]["members"]) for c in condensed.nodes}
    comp_order = list(nx.lexicographical_topological_sort(condensed, key=lambda c: members[c][0]))
    cg.components = [members[c] for c in comp_order]

    if order is None:
        order = []
        for comp in cg.components:
            remaining = list(comp)
            while remaining:
                inside = set(remaining)

                def incoming(v: int) -> int:
                    return sum(w for (a, b), w in cg.weights.items() if b == v and a in inside)

                best = min(remaining, key=lambda v: (incoming(v), v))
                order.append(best)
                remaining.remove(best)
    if sorted(order) != list(range(cg.num_vars)):
        raise ValueError("order must be a permutation of the variables")
    level = [0] * cg.num_vars
    for pos, v in enumerate(order):
        level[v] = pos
    cg.level = level
    cg.pruned = {(a, b) for (a, b) in cg.weights if level[a] < level[b]}
    return cg
