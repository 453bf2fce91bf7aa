from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Optional

from ..task import ExtendedState, State

INFINITY = math.inf


@dataclass(frozen=True)
class HeuristicResult:
    value: float
    preferred: tuple[int, ...] = ()
    relaxed_plan: Optional[tuple[int, ...]] = None

    @property
    def dead_end(self) -> bool:
        return self.value == INFINITY


class Heuristic:
    """Evaluator interface used by the search engines.

    ``sound_dead_ends`` says whether an infinite value proves that no plan
    exists from the evaluated state.
    """

    name = "heuristic"
    sound_dead_ends = False

    def evaluate(self, state: State, ext: Optional[ExtendedState] = None) -> HeuristicResult:
        raise NotImplementedError


class ConstantHeuristic(Heuristic):
    name = "const"

    def __init__(self, value: float = 0):
        self.value = value

    def evaluate(self, state, ext=None) -> HeuristicResult:
        return HeuristicResult(self.value)


class BucketQueue:
    """Monotone priority queue over small non-negative integer keys, FIFO per key."""

    def __init__(self):
        self._buckets: list[deque] = []
        self._current = 0
        self._size = 0

    def push(self, key: int, item) -> None:
        if key < self._current:
            raise ValueError("bucket queue keys must not decrease")
        while len(self._buckets) <= key:
            self._buckets.append(deque())
        self._buckets[key].append(item)
        self._size += 1

    def pop(self) -> tuple[int, object]:
        while not self._buckets[self._current]:
            self._current += 1
        self._size -= 1
        return self._current, self._buckets[self._current].popleft()

    def __len__(self) -> int:
        return self._size
