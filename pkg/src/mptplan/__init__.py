"""Planning for multi-valued planning tasks with causal graph and FF heuristics."""
