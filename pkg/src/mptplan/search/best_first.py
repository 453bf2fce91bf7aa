"""Greedy and multi-heuristic best-first search with deferred evaluation.

Open list entries are (successor, parent, operator) triples keyed by the
parent's heuristic value; a successor is evaluated only when it is
removed from an open list. With preferred operators every heuristic gets
a second list that only receives preferred successors, and the search
rotates over all lists, skipping empty ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from ..compilation import CompiledTask
from ..heuristics import INFINITY, CausalGraphHeuristic, FFHeuristic, Heuristic
from ..task import ExtendedState, State, holds
from .common import (
    FAILURE,
    PLAN_FOUND,
    RESOURCE_LIMIT,
    UNSOLVABLE,
    Budget,
    Engine,
    OpenList,
    SearchConfig,
    SearchResult,
    Statistics,
    extract_plan,
    successors,
)


@dataclass(frozen=True)
class TraceEntry:
    """One expansion: the list it came from and which lists were nonempty at that moment."""

    source: int
    nonempty: tuple[bool, ...]
    state: State


@dataclass
class _Evaluation:
    values: list[float]
    preferred: frozenset[int]
    dead_end: bool
    unsound: bool


class BestFirstSearch(Engine):
    def __init__(
        self,
        compiled: CompiledTask,
        guides: Sequence[Heuristic],
        preferred: str = "none",
        budget: Optional[Budget] = None,
        restart_with_ff: bool = True,
        record_trace: bool = False,
    ):
        if not guides:
            raise ValueError("best-first search needs at least one heuristic")
        self.compiled = compiled
        self.task = compiled.task
        self.guides = list(guides)
        self.preferred_mode = preferred
        self.budget = budget or Budget()
        self.restart_with_ff = restart_with_ff
        self.record_trace = record_trace
        self.stats = Statistics()
        self.trace: list[TraceEntry] = []
        self.lists: list[OpenList] = []
        # (heuristic index, preferred-only) per list, in rotation order
        self.roles: list[tuple[int, bool]] = []
        for i in range(len(self.guides)):
            self.roles.append((i, False))
            if preferred != "none":
                self.roles.append((i, True))
        self.lists = [OpenList() for _ in self.roles]
        self.closed: dict[State, tuple[Optional[State], Optional[int]]] = {}
        self.unsound_prunes = 0
        self.restarted: Optional[BestFirstSearch] = None
        self._pointer = 0
        self._started = False
        self._initial_eval: Optional[_Evaluation] = None
        self._providers: dict[str, Heuristic] = {}
        for h in self.guides:
            self._providers.setdefault(h.name, h)

    def _provider(self, name: str) -> Heuristic:
        if name not in self._providers:
            self._providers[name] = CausalGraphHeuristic(self.compiled) if name == "cg" else FFHeuristic(self.compiled)
        return self._providers[name]

    def _preferred(self, state: State, ext: ExtendedState, results: dict) -> frozenset[int]:
        mode = self.preferred_mode
        if mode == "none":
            return frozenset()

        def ops(name: str) -> frozenset[int]:
            if name not in results:
                results[name] = self._provider(name).evaluate(state, ext)
            return frozenset(results[name].preferred)

        if mode == "ht":
            return ops("cg")
        if mode == "ha":
            return ops("ff")
        if mode == "ht+ha-fallback":
            return ops("cg") or ops("ff")
        return ops("cg") | ops("ff")

    def _evaluate(self, state: State, ext: ExtendedState) -> _Evaluation:
        self.stats.evaluations += 1
        results: dict = {}
        values = []
        for h in self.guides:
            r = h.evaluate(state, ext)
            results.setdefault(h.name, r)
            values.append(r.value)
        sound_inf = any(v == INFINITY and h.sound_dead_ends for v, h in zip(values, self.guides))
        dead = sound_inf or all(v == INFINITY for v in values)
        preferred = frozenset() if dead else self._preferred(state, ext, results)
        return _Evaluation(values, preferred, dead, dead and not sound_inf)

    def _start(self) -> None:
        self._started = True
        s0 = self.task.initial
        self._initial_eval = self._evaluate(s0, self.compiled.axiom_evaluator.evaluate(s0))
        for li, (i, pref_only) in enumerate(self.roles):
            if not pref_only:
                self.lists[li].push(self._initial_eval.values[i], (s0, None, None))

    def _purge(self) -> list[bool]:
        for q in self.lists:
            while len(q) and q.peek()[0] in self.closed:
                q.pop()
        return [len(q) > 0 for q in self.lists]

    def _result(self, outcome: str, plan=None) -> SearchResult:
        info = {"unsound_prunes": self.unsound_prunes}
        return SearchResult(outcome, plan, self.stats, info)

    def step(self) -> Optional[SearchResult]:
        if self.restarted is not None:
            result = self.restarted.step()
            if result is not None:
                result.stats.add(self.stats)
                result.stats.restarts += 1
                result.info["restarted_with"] = "ff"
            return result
        if not self._started:
            self._start()
        nonempty = self._purge()
        if not any(nonempty):
            return self._exhausted()
        if self.budget.exhausted():
            return self._result(RESOURCE_LIMIT)
        n = len(self.lists)
        source = next((self._pointer + k) % n for k in range(n) if nonempty[(self._pointer + k) % n])
        self._pointer = (source + 1) % n
        state, parent, op = self.lists[source].pop()
        self.closed[state] = (parent, op)
        ext = self.compiled.axiom_evaluator.evaluate(state)
        if parent is None:
            ev = self._initial_eval
        else:
            ev = self._evaluate(state, ext)
        if holds(self.task.goal, ext):
            return self._result(PLAN_FOUND, extract_plan(self.closed, state))
        self.stats.expansions += 1
        self.budget.charge()
        if self.record_trace:
            self.trace.append(TraceEntry(source, tuple(nonempty), state))
        if ev.dead_end:
            self.stats.dead_ends += 1
            self.unsound_prunes += ev.unsound
            return None
        for o, child in successors(self.compiled, state, ext):
            self.stats.generations += 1
            entry = (child, state, o)
            preferred = o in ev.preferred
            for li, (i, pref_only) in enumerate(self.roles):
                value = ev.values[i]
                if value != INFINITY and (preferred or not pref_only):
                    self.lists[li].push(value, entry)
        return None

    def _exhausted(self) -> Optional[SearchResult]:
        if self.unsound_prunes == 0:
            return self._result(UNSOLVABLE)
        if not self.restart_with_ff:
            return self._result(FAILURE)
        self.restarted = BestFirstSearch(
            self.compiled, [FFHeuristic(self.compiled)], self.preferred_mode, self.budget,
            restart_with_ff=False, record_trace=self.record_trace)
        self.restarted.trace = self.trace
        return None


def heuristic_instances(compiled: CompiledTask, which: str) -> list[Heuristic]:
    if which == "cg":
        return [CausalGraphHeuristic(compiled)]
    if which == "ff":
        return [FFHeuristic(compiled)]
    return [CausalGraphHeuristic(compiled), FFHeuristic(compiled)]


def make_best_first(compiled: CompiledTask, cfg: SearchConfig, budget: Optional[Budget] = None,
                    guides: Optional[Sequence[Heuristic]] = None) -> BestFirstSearch:
    if guides is None:
        if cfg.engine == "gbfs" and cfg.heuristic == "both":
            raise ValueError("gbfs uses a single heuristic; choose cg or ff")
        guides = heuristic_instances(compiled, cfg.heuristic)
    if budget is None:
        budget = Budget(cfg.max_expansions, cfg.timeout)
    return BestFirstSearch(compiled, guides, cfg.preferred, budget, cfg.restart_with_ff, cfg.record_trace)


def gbfs(compiled: CompiledTask, cfg: SearchConfig = SearchConfig(engine="gbfs", heuristic="cg", preferred="ht"),
         heuristic: Optional[Heuristic] = None) -> SearchResult:
    return make_best_first(compiled, cfg, guides=None if heuristic is None else [heuristic]).run()


def mhbfs(compiled: CompiledTask, cfg: SearchConfig = SearchConfig(),
          heuristics: Optional[Sequence[Heuristic]] = None) -> SearchResult:
    return make_best_first(compiled, cfg, guides=heuristics).run()
