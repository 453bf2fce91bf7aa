"""State evaluators: the causal graph heuristic and the FF heuristic."""

from .base import INFINITY, BucketQueue, ConstantHeuristic, Heuristic, HeuristicResult
from .cg import CausalGraphHeuristic, CostTable, cg_bottom_up_oracle, cg_heuristic, compute_costs
from .ff import FFHeuristic, UnaryAction, ff_heuristic, unary_actions

__all__ = [
    "INFINITY", "BucketQueue", "CausalGraphHeuristic", "ConstantHeuristic", "CostTable",
    "FFHeuristic", "Heuristic", "HeuristicResult", "UnaryAction", "cg_bottom_up_oracle",
    "cg_heuristic", "compute_costs", "ff_heuristic", "unary_actions",
]
