"""Counter-based evaluation of layered axioms."""

from __future__ import annotations

from collections import deque

from ..task import UNDEFINED, ExtendedState, State, Task


class AxiomEvaluator:
    """Per layer, an index from facts to the axioms whose body contains them.

    The counters are scratch space rebuilt on every call, so one instance
    must not be shared between threads.
    """

    def __init__(self, task: Task):
        self.task = task
        self.derived = task.derived
        self.layers = task.axiom_layers()
        self.body_index: list[dict[tuple[int, int], list[int]]] = []
        for layer in self.layers:
            index: dict[tuple[int, int], list[int]] = {}
            for ai in layer:
                for pair in dict(task.axioms[ai].condition).items():
                    index.setdefault(pair, []).append(ai)
            self.body_index.append(index)
        self.body_size = [len(dict(ax.condition)) for ax in task.axioms]
        self._counter = [0] * len(task.axioms)

    def evaluate(self, state: State) -> ExtendedState:
        values = list(state)
        for v in self.derived:
            values[v] = UNDEFINED
        axioms = self.task.axioms
        counter = self._counter
        for layer, index in zip(self.layers, self.body_index):
            queue: deque[int] = deque()
            for ai in layer:
                counter[ai] = self.body_size[ai]
            for pair, users in index.items():
                if values[pair[0]] == pair[1]:
                    for ai in users:
                        counter[ai] -= 1
            for ai in layer:
                if counter[ai] == 0:
                    queue.append(ai)
            while queue:
                ax = axioms[queue.popleft()]
                if values[ax.var] != ax.value:
                    values[ax.var] = ax.value
                    for ai in index.get((ax.var, ax.value), ()):
                        counter[ai] -= 1
                        if counter[ai] == 0:
                            queue.append(ai)
        return tuple(values)


def evaluate_axioms_fast(evaluator: AxiomEvaluator, state: State) -> ExtendedState:
    return evaluator.evaluate(state)
