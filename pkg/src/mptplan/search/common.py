from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass, field
from typing import Any, Optional

from ..compilation import CompiledTask
from ..task import ConflictingEffects, ExtendedState, State, apply

PLAN_FOUND = "plan-found"
UNSOLVABLE = "unsolvable"
RESOURCE_LIMIT = "resource-limit"
FAILURE = "failure"

ENGINES = ("gbfs", "mhbfs", "fibs", "portfolio")
PREFERRED_MODES = ("none", "ht", "ha", "ht+ha-fallback", "ht+ha")
HEURISTICS = ("cg", "ff", "both")


@dataclass(frozen=True)
class SearchConfig:
    engine: str = "mhbfs"
    preferred: str = "ht+ha"
    heuristic: str = "both"
    max_expansions: Optional[int] = None
    timeout: Optional[float] = None
    restart_with_ff: bool = True
    record_trace: bool = False

    def __post_init__(self):
        if self.engine not in ENGINES:
            raise ValueError(f"unknown engine {self.engine!r}")
        if self.preferred not in PREFERRED_MODES:
            raise ValueError(f"unknown preferred-operator mode {self.preferred!r}")
        if self.heuristic not in HEURISTICS:
            raise ValueError(f"unknown heuristic {self.heuristic!r}")

    @property
    def label(self) -> str:
        if self.engine in ("fibs", "portfolio"):
            return self.engine
        return f"{self.engine}/{self.heuristic}/{self.preferred}"


@dataclass
class Statistics:
    expansions: int = 0
    generations: int = 0
    evaluations: int = 0
    dead_ends: int = 0
    restarts: int = 0

    def add(self, other: "Statistics") -> None:
        self.expansions += other.expansions
        self.generations += other.generations
        self.evaluations += other.evaluations
        self.dead_ends += other.dead_ends
        self.restarts += other.restarts


@dataclass
class SearchResult:
    """Outcome of a search; ``plan`` uses operator ids of ``compiled.task``."""

    outcome: str
    plan: Optional[list[int]] = None
    stats: Statistics = field(default_factory=Statistics)
    info: dict[str, Any] = field(default_factory=dict)

    @property
    def solved(self) -> bool:
        return self.outcome == PLAN_FOUND


class OpenList:
    """Min-priority queue, FIFO among equal keys."""

    def __init__(self):
        self._heap: list = []
        self._counter = itertools.count()

    def push(self, key, item) -> None:
        heapq.heappush(self._heap, (key, next(self._counter), item))

    def peek(self):
        return self._heap[0][2]

    def pop(self):
        return heapq.heappop(self._heap)[2]

    def __len__(self) -> int:
        return len(self._heap)


class Budget:
    """Expansion and wall-clock limits shared by cooperating engines."""

    def __init__(self, max_expansions: Optional[int] = None, timeout: Optional[float] = None):
        self.max_expansions = max_expansions
        self.deadline = None if timeout is None else time.monotonic() + timeout
        self.used = 0

    def charge(self, n: int = 1) -> None:
        self.used += n

    def exhausted(self) -> bool:
        if self.max_expansions is not None and self.used >= self.max_expansions:
            return True
        return self.deadline is not None and time.monotonic() >= self.deadline


class Engine:
    """Search as a sequence of small steps, so several engines can share a thread.

    ``step`` returns None while the search is still running.
    """

    stats: Statistics

    def step(self) -> Optional[SearchResult]:
        raise NotImplementedError

    def run(self) -> SearchResult:
        while True:
            result = self.step()
            if result is not None:
                return result


def successors(compiled: CompiledTask, state: State, ext: ExtendedState):
    """(operator id, successor state) for every applicable operator, by operator id."""
    task = compiled.task
    for o in compiled.successor_generator.applicable(ext):
        try:
            yield o, apply(task, state, task.operators[o], ext)
        except ConflictingEffects:
            continue


def extract_plan(parents: dict, state) -> list[int]:
    plan = []
    while True:
        parent, op = parents[state]
        if parent is None:
            break
        plan.append(op)
        state = parent
    plan.reverse()
    return plan
