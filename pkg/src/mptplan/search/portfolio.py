"""Round-robin scheduling of several search configurations in one thread."""

from __future__ import annotations

from typing import Optional, Sequence

from ..compilation import CompiledTask
from .best_first import make_best_first
from .common import (
    FAILURE,
    PLAN_FOUND,
    RESOURCE_LIMIT,
    UNSOLVABLE,
    Budget,
    Engine,
    SearchConfig,
    SearchResult,
    Statistics,
)
from .fibs import Fibs

# the six configurations compared in the experiments: G, G+P, G+P+, M, M+P, F
DEFAULT_MEMBERS = (
    SearchConfig(engine="gbfs", heuristic="cg", preferred="none"),
    SearchConfig(engine="gbfs", heuristic="cg", preferred="ht"),
    SearchConfig(engine="gbfs", heuristic="cg", preferred="ht+ha-fallback"),
    SearchConfig(engine="mhbfs", heuristic="both", preferred="none"),
    SearchConfig(engine="mhbfs", heuristic="both", preferred="ht+ha"),
    SearchConfig(engine="fibs"),
)


def make_engine(compiled: CompiledTask, cfg: SearchConfig, budget: Optional[Budget] = None) -> Engine:
    if budget is None:
        budget = Budget(cfg.max_expansions, cfg.timeout)
    if cfg.engine in ("gbfs", "mhbfs"):
        return make_best_first(compiled, cfg, budget)
    if cfg.engine == "fibs":
        return Fibs(compiled, budget)
    if cfg.engine == "portfolio":
        return Portfolio(compiled, DEFAULT_MEMBERS, member_expansions=cfg.max_expansions, timeout=cfg.timeout)
    raise ValueError(f"unknown engine {cfg.engine!r}")


class Portfolio(Engine):
    """One step of each live member in turn; the first plan wins.

    Every member has its own expansion budget. Unsolvability is only
    reported when a member proves it (the best-first engines never return
    ``unsolvable`` without proof).
    """

    def __init__(self, compiled: CompiledTask, members: Sequence[SearchConfig],
                 member_expansions: Optional[int] = None, timeout: Optional[float] = None):
        if not members:
            raise ValueError("a portfolio needs at least one member")
        self.configs = list(members)
        self.clock = Budget(None, timeout)
        self.engines: list[Optional[Engine]] = []
        for cfg in self.configs:
            limit = member_expansions if member_expansions is not None else cfg.max_expansions
            self.engines.append(make_engine(compiled, cfg, Budget(limit, None)))
        self.outcomes: list[Optional[str]] = [None] * len(self.configs)
        self.stats = Statistics()
        self._turn = 0

    def _collect(self) -> Statistics:
        total = Statistics()
        for engine in self.engines:
            total.add(engine.stats)
        return total

    def _result(self, outcome: str, plan=None, winner: Optional[int] = None) -> SearchResult:
        self.stats = self._collect()
        info = {
            "winner": None if winner is None else self.configs[winner].label,
            "members": [(c.label, o) for c, o in zip(self.configs, self.outcomes)],
        }
        return SearchResult(outcome, plan, self.stats, info)

    def step(self) -> Optional[SearchResult]:
        live = [i for i, o in enumerate(self.outcomes) if o is None]
        if not live:
            return self._result(RESOURCE_LIMIT if RESOURCE_LIMIT in self.outcomes else FAILURE)
        if self.clock.exhausted():
            return self._result(RESOURCE_LIMIT)
        i = next((j for j in live if j >= self._turn), live[0])
        self._turn = i + 1
        result = self.engines[i].step()
        if result is None:
            return None
        self.outcomes[i] = result.outcome
        if result.outcome == PLAN_FOUND:
            return self._result(PLAN_FOUND, result.plan, i)
        if result.outcome == UNSOLVABLE:
            return self._result(UNSOLVABLE, None, i)
        return None


def portfolio(compiled: CompiledTask, configs: Sequence[SearchConfig] = DEFAULT_MEMBERS,
              budget: Optional[int] = None, timeout: Optional[float] = None) -> SearchResult:
    return Portfolio(compiled, configs, budget, timeout).run()
