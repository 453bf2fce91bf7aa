"""Search engines over compiled tasks."""

from ..compilation import CompiledTask
from .best_first import BestFirstSearch, TraceEntry, gbfs, heuristic_instances, make_best_first, mhbfs
from .common import (
    ENGINES,
    FAILURE,
    HEURISTICS,
    PLAN_FOUND,
    PREFERRED_MODES,
    RESOURCE_LIMIT,
    UNSOLVABLE,
    Budget,
    Engine,
    OpenList,
    SearchConfig,
    SearchResult,
    Statistics,
)
from .easy import EasyResult, check_easy_conditions, solve_easy_mpt
from .fibs import Fibs, ReachOneGoal, ReachResult, fibs, forbidden_by_threshold, modification_distance, reach_one_goal
from .portfolio import DEFAULT_MEMBERS, Portfolio, make_engine, portfolio


def search(compiled: CompiledTask, cfg: SearchConfig) -> SearchResult:
    return make_engine(compiled, cfg).run()


__all__ = [
    "BestFirstSearch", "Budget", "DEFAULT_MEMBERS", "ENGINES", "EasyResult", "Engine", "FAILURE",
    "Fibs", "HEURISTICS", "OpenList", "PLAN_FOUND", "PREFERRED_MODES", "Portfolio", "RESOURCE_LIMIT",
    "ReachOneGoal", "ReachResult", "SearchConfig", "SearchResult", "Statistics", "TraceEntry",
    "UNSOLVABLE", "check_easy_conditions", "fibs", "forbidden_by_threshold", "gbfs", "heuristic_instances",
    "make_best_first", "make_engine", "mhbfs", "modification_distance", "portfolio", "reach_one_goal",
    "search", "solve_easy_mpt",
]
