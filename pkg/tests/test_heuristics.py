import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import op, state, value
from oracles import bfs_plan, dijkstra01, relaxed_layers
from mptplan.compilation import compile_task
from mptplan.heuristics import (
    BucketQueue,
    CausalGraphHeuristic,
    FFHeuristic,
    cg_bottom_up_oracle,
    cg_heuristic,
    compute_costs,
    ff_heuristic,
)
from mptplan.random_tasks import random_acyclic_task, random_task, without_operator
from mptplan.task import Task, applicable, extended_state, goal_satisfied, holds


def random_state(rng, task):
    return tuple(None if v.derived else rng.randrange(v.size) for v in task.variables)


def all_tables(compiled, s, **kwargs):
    h = CausalGraphHeuristic(compiled, **kwargs)
    h._begin(compiled.axiom_evaluator.evaluate(s))
    return {(v, d): h.compute_costs(v, d).costs
            for v, var in enumerate(compiled.task.variables) for d in range(var.size)}


class TestBucketQueue:
    def test_fifo_within_bucket(self):
        q = BucketQueue()
        for key, item in [(1, "a"), (0, "b"), (1, "c"), (0, "d")]:
            q.push(key, item)
        assert [q.pop() for _ in range(4)] == [(0, "b"), (0, "d"), (1, "a"), (1, "c")]
        assert len(q) == 0


class TestComputeCosts:
    def test_robot_path_with_open_door(self, compiled_grid1, grid1):
        r11, r32 = value(grid1, "r", "(1,1)")[1], value(grid1, "r", "(3,2)")[1]
        s = state(grid1, d="open")
        assert compute_costs(compiled_grid1, s, 0, r11).costs[r32] == 3

    def test_same_value_costs_nothing(self, compiled_grid1, grid1):
        for v, var in enumerate(grid1.variables):
            for d in range(var.size):
                assert compute_costs(compiled_grid1, grid1.initial, v, d).costs[d] == 0

    def test_matches_oracle_on_fixtures(self, grid1, grid1f, transport1):
        for task in (grid1, grid1f, transport1):
            compiled = compile_task(task)
            assert all_tables(compiled, compiled.task.initial) == cg_bottom_up_oracle(compiled, compiled.task.initial)

    def test_transport_parcel_finite(self, compiled_transport1, transport1):
        tables = cg_bottom_up_oracle(compiled_transport1, transport1.initial)
        p1 = 4
        at_c, at_g = value(transport1, "p1", "at-C")[1], value(transport1, "p1", "at-G")[1]
        assert math.isfinite(tables[(p1, at_c)][at_g])

    def test_single_variable_is_shortest_path(self):
        task = random_acyclic_task(random.Random(0), max_vars=1)
        compiled = compile_task(task, prune=False)
        arcs = [(t.source, t.target, t.weight) for t in compiled.dtgs[0].transitions]
        tables = cg_bottom_up_oracle(compiled, task.initial)
        for d in range(task.variables[0].size):
            assert tables[(0, d)] == dijkstra01(task.variables[0].size, arcs, d)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 10**6))
    def test_matches_oracle_on_acyclic_tasks(self, seed):
        rng = random.Random(seed)
        compiled = compile_task(random_acyclic_task(rng), prune=False)
        s = random_state(rng, compiled.task)
        assert all_tables(compiled, s) == cg_bottom_up_oracle(compiled, s)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 10**6))
    def test_matches_oracle_on_pruned_cyclic_tasks(self, seed):
        rng = random.Random(seed)
        compiled = compile_task(random_task(rng), prune=False)
        s = random_state(rng, compiled.task)
        assert all_tables(compiled, s) == cg_bottom_up_oracle(compiled, s)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 10**6))
    def test_root_costs_are_shortest_paths(self, seed):
        rng = random.Random(seed)
        compiled = compile_task(random_task(rng), prune=False)
        task = compiled.task
        s = random_state(rng, task)
        tables = all_tables(compiled, s)
        for v, var in enumerate(task.variables):
            if compiled.causal_graph.predecessors(v, pruned=True):
                continue
            arcs = [(t.source, t.target, t.weight) for t in compiled.dtgs[v].transitions]
            for d in range(var.size):
                assert tables[(v, d)] == dijkstra01(var.size, arcs, d)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10**6))
    def test_caches_are_transparent(self, seed):
        rng = random.Random(seed)
        compiled = compile_task(random_task(rng), prune=False)
        cached = CausalGraphHeuristic(compiled)
        plain = CausalGraphHeuristic(compiled, use_cache=False, use_global_cache=False)
        for _ in range(8):
            s = random_state(rng, compiled.task)
            assert cached.evaluate(s) == plain.evaluate(s)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10**6))
    def test_tables_depend_only_on_ancestors(self, seed):
        rng = random.Random(seed)
        compiled = compile_task(random_task(rng), prune=False)
        task, cg = compiled.task, compiled.causal_graph
        v = rng.randrange(len(task.variables))
        keep = cg.ancestors([v], pruned=True) - {v}
        s = random_state(rng, task)
        t = tuple(x if i in keep or x is None else rng.randrange(task.variables[i].size) for i, x in enumerate(s))
        ext_s, ext_t = extended_state(task, s), extended_state(task, t)
        if any(ext_s[u] != ext_t[u] for u in keep):
            return  # derived ancestors changed with the fluents
        for d in range(task.variables[v].size):
            assert compute_costs(compiled, s, v, d).costs == compute_costs(compiled, t, v, d).costs


class TestCausalGraphHeuristic:
    def test_goal_state(self, compiled_grid1, grid1):
        goal_state = state(grid1, r="(2,1)", k="(2,1)", d="open")
        result = cg_heuristic(compiled_grid1, goal_state)
        assert result.value == 0 and result.preferred == ()

    def test_grid1_initial(self, compiled_grid1, grid1):
        result = cg_heuristic(compiled_grid1, grid1.initial)
        tables = cg_bottom_up_oracle(compiled_grid1, grid1.initial)
        k, target = value(grid1, "k", "(2,1)")
        assert result.value == tables[(k, grid1.initial[k])][target] == 8
        assert result.preferred == (op(grid1, "move-robot (1,1) (1,2)"),)

    def test_helpful_transition_heads_for_the_key(self, compiled_grid1, grid1):
        s = state(grid1, r="(2,2)")
        names = [grid1.operators[o].name for o in cg_heuristic(compiled_grid1, s).preferred]
        assert names == ["move-robot (2,2) (3,2)"]

    def test_no_unlock_is_infinite(self, grid1):
        compiled = compile_task(without_operator(grid1, "unlock-door"))
        result = cg_heuristic(compiled, grid1.initial)
        assert result.value == math.inf and result.dead_end

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 10**6))
    def test_helpful_transitions_are_applicable(self, seed):
        rng = random.Random(seed)
        compiled = compile_task(random_task(rng), prune=False)
        task = compiled.task
        h = CausalGraphHeuristic(compiled)
        for _ in range(8):
            s = random_state(rng, task)
            for o in h.evaluate(s).preferred:
                assert applicable(task, s, task.operators[o])

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 10**6))
    def test_zero_iff_goal_without_axioms(self, seed):
        rng = random.Random(seed)
        compiled = compile_task(random_task(rng, max_layers=0), prune=False)
        h = CausalGraphHeuristic(compiled)
        for _ in range(8):
            s = random_state(rng, compiled.task)
            assert (h.evaluate(s).value == 0) == goal_satisfied(compiled.task, s)

    def test_goal_states_score_zero_on_grid1f(self, grid1f):
        compiled = compile_task(grid1f)
        h = CausalGraphHeuristic(compiled)
        for r in range(6):
            for d in range(2):
                s = (r, value(grid1f, "k", "(2,1)")[1], d, None)
                if goal_satisfied(grid1f, s):
                    assert h.evaluate(s).value == 0

    def test_pruned_conditions_can_hide_a_frozen_robot(self, grid1f):
        # f sits below r and d, so its arcs into bot lose their conditions
        compiled = compile_task(grid1f)
        s = state(grid1f, r="(1,1)", k="(2,1)", d="open")
        assert not goal_satisfied(grid1f, s)
        assert cg_heuristic(compiled, s).value == 0
        assert ff_heuristic(compiled, s).value > 0


def replay_relaxed(compiled, ext, plan):
    """Apply the relaxed plan, axioms and arcs into bottom until nothing new is reached."""
    task = compiled.task
    reached = set(enumerate(ext))
    into_bottom = [(d.var, t.condition + ((d.var, t.source),)) for d in compiled.dtgs if d.extended
                   for t in d.transitions if t.target == 0]
    changed = True
    while changed:
        before = len(reached)
        for o in plan:
            operator = task.operators[o]
            if all(p in reached for p in operator.precondition):
                reached |= {(e.var, e.value) for e in operator.effects if all(p in reached for p in e.condition)}
        reached |= {(a.var, a.value) for a in task.axioms if all(p in reached for p in a.condition)}
        reached |= {(v, 0) for v, cond in into_bottom if all(p in reached for p in cond)}
        changed = len(reached) != before
    return reached


class TestFF:
    def test_grid1_initial(self, compiled_grid1, grid1):
        result = ff_heuristic(compiled_grid1, grid1.initial)
        layers = relaxed_layers(grid1, grid1.initial)
        assert result.value >= max(layers[g] for g in grid1.goal) >= 5
        assert result.preferred == (op(grid1, "move-robot (1,1) (1,2)"),)

    def test_goal_state(self, compiled_grid1, grid1):
        result = ff_heuristic(compiled_grid1, state(grid1, r="(2,1)", k="(2,1)", d="open"))
        assert result.value == 0 and result.relaxed_plan == ()

    def test_no_pickup_is_infinite(self, grid1):
        task = grid1
        for name in [o.name for o in grid1.operators if o.name.startswith("pickup")]:
            task = without_operator(task, name)
        assert ff_heuristic(compile_task(task), task.initial).value == math.inf
        assert bfs_plan(task) is None

    def test_grid1f_relaxed_plan_replays(self, grid1f):
        compiled = compile_task(grid1f)
        ff = FFHeuristic(compiled)
        ext = extended_state(grid1f, grid1f.initial)
        result = ff.evaluate(grid1f.initial)
        assert result.value < math.inf
        assert set(grid1f.goal) <= replay_relaxed(compiled, ext, result.relaxed_plan)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 10**6))
    def test_infinite_means_unsolvable(self, seed):
        rng = random.Random(seed)
        task = random_task(rng, max_vars=4, max_domain=3, max_operators=12)
        s = random_state(rng, task)
        rebased = Task(task.variables, s, task.goal, task.operators, task.axioms)
        compiled = compile_task(rebased, prune=False)
        if ff_heuristic(compiled, s).value == math.inf:
            assert bfs_plan(rebased) is None

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 10**6))
    def test_bounded_by_layers_and_replays(self, seed):
        rng = random.Random(seed)
        compiled = compile_task(random_task(rng), prune=False)
        task = compiled.task
        s = random_state(rng, task)
        ext = extended_state(task, s)
        layers = relaxed_layers(task, ext)
        result = FFHeuristic(compiled).evaluate(s)
        if any(g not in layers for g in task.goal):
            assert result.value == math.inf
        if result.value == math.inf:
            return
        if not any(e.condition for o in task.operators for e in o.effects):
            assert result.value >= max((layers[g] for g in task.goal), default=0)
        assert set(task.goal) <= replay_relaxed(compiled, ext, result.relaxed_plan)
        assert (result.value == 0) == holds(task.goal, ext)
        for o in result.preferred:
            assert applicable(task, s, task.operators[o])
