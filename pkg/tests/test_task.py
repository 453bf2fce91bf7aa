import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import NARRATIVE, op, state, value
from oracles import naive_apply, naive_extended
from mptplan.random_tasks import random_task
from mptplan.task import (
    Axiom,
    ConflictingEffects,
    Effect,
    NotApplicable,
    Operator,
    Task,
    Variable,
    applicable,
    apply,
    errors,
    extended_state,
    goal_satisfied,
    validate_plan,
    validate_task,
)


def narrative(task):
    return [op(task, name) for name in NARRATIVE]


def run(task, plan):
    s = task.initial
    for o in plan:
        s = apply(task, s, task.operators[o])
    return s


class TestExtendedState:
    def test_open_door_at_corner_freezes(self, grid1f):
        s = state(grid1f, d="open", r="(1,1)", k="(3,2)")
        f, top = value(grid1f, "f", "top")
        assert extended_state(grid1f, s)[f] == top

    def test_closed_door_leaves_bottom(self, grid1f):
        s = state(grid1f, d="closed", r="(1,1)", k="(3,2)")
        f, _ = value(grid1f, "f", "bot")
        assert extended_state(grid1f, s)[f] == 0

    def test_fluents_are_copied(self, grid1):
        assert extended_state(grid1, grid1.initial) == grid1.initial

    def test_three_layers_match_naive_fixpoint(self):
        rng = random.Random(7)
        checked = 0
        for _ in range(200):
            task = random_task(rng, max_vars=6, max_layers=3, max_derived=3, max_axioms=20)
            if len(task.axiom_layers()) < 2:
                continue
            for _ in range(10):
                s = tuple(None if v.derived else rng.randrange(v.size) for v in task.variables)
                assert extended_state(task, s) == naive_extended(task, s)
            checked += 1
        assert checked > 20

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10**6), st.integers(0, 10**6))
    def test_firing_order_does_not_matter(self, task_seed, order_seed):
        rng = random.Random(task_seed)
        task = random_task(rng, max_layers=3, max_axioms=12)
        s = tuple(None if v.derived else rng.randrange(v.size) for v in task.variables)
        assert extended_state(task, s, random.Random(order_seed)) == extended_state(task, s)


class TestApplication:
    def test_first_move_applicable(self, grid1):
        assert applicable(grid1, grid1.initial, grid1.operators[op(grid1, "move-robot (1,1) (1,2)")])

    def test_door_blocks_entering(self, grid1):
        s = state(grid1, r="(2,2)")
        assert not applicable(grid1, s, grid1.operators[op(grid1, "move-robot (2,2) (2,1)")])

    def test_empty_precondition_always_applicable(self, grid1):
        free = Operator("free", (), (Effect((), 2, 1),))
        for s in [grid1.initial, state(grid1, r="(3,2)", d="open")]:
            assert applicable(grid1, s, free)

    def test_pickup(self, grid1):
        s = state(grid1, r="(3,2)", k="(3,2)", d="closed")
        after = apply(grid1, s, grid1.operators[op(grid1, "pickup-key (3,2)")])
        assert after == state(grid1, r="(3,2)", k="carried", d="closed")

    def test_violated_effect_condition_is_skipped(self):
        x = Variable("x", ("a", "b"))
        y = Variable("y", ("a", "b"))
        o = Operator("o", (), (Effect(((0, 1),), 1, 1), Effect((), 0, 1)))
        task = Task((x, y), (0, 0), (), (o,))
        assert apply(task, (0, 0), o) == (1, 0)
        assert apply(task, (1, 0), o) == (1, 1)

    def test_not_applicable_raises(self, grid1):
        with pytest.raises(NotApplicable):
            apply(grid1, grid1.initial, grid1.operators[op(grid1, "unlock-door")])

    def test_conflicting_effects_raise(self):
        x = Variable("x", ("a", "b", "c"))
        o = Operator("o", (), (Effect((), 0, 1), Effect((), 0, 2)))
        task = Task((x,), (0,), (), (o,))
        with pytest.raises(ConflictingEffects):
            apply(task, (0,), o)
        assert any("two values" in v.message for v in validate_task(task))

    def test_narrative_moves_key_to_target(self, grid1):
        final = run(grid1, narrative(grid1))
        assert final == state(grid1, r="(2,1)", k="(2,1)", d="open")

    def test_apply_matches_naive(self):
        rng = random.Random(3)
        for _ in range(200):
            task = random_task(rng)
            s = tuple(None if v.derived else rng.randrange(v.size) for v in task.variables)
            ext = extended_state(task, s)
            for i, o in enumerate(task.operators):
                if applicable(task, s, o, ext):
                    try:
                        got = apply(task, s, o, ext)
                    except ConflictingEffects:
                        continue
                    assert got == naive_apply(task, s, i)


class TestGoal:
    def test_initial_not_goal(self, grid1):
        assert not goal_satisfied(grid1, grid1.initial)

    def test_narrative_end_is_goal(self, grid1):
        assert goal_satisfied(grid1, run(grid1, narrative(grid1)))

    def test_empty_goal(self, grid1):
        task = Task(grid1.variables, grid1.initial, (), grid1.operators)
        assert goal_satisfied(task, task.initial)
        assert goal_satisfied(task, state(task, r="(3,2)"))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10**6))
    def test_goal_iff_empty_plan_valid(self, seed):
        rng = random.Random(seed)
        task = random_task(rng)
        s = tuple(None if v.derived else rng.randrange(v.size) for v in task.variables)
        rebased = Task(task.variables, s, task.goal, task.operators, task.axioms)
        assert goal_satisfied(task, s) == validate_plan(rebased, []).valid


class TestValidateTask:
    def test_fixtures_ok(self, grid1, grid1f, transport1, nonserializable):
        for task in (grid1, grid1f, transport1, nonserializable):
            assert validate_task(task) == []

    def test_two_head_values_in_one_layer(self):
        v = Variable("v", ("bot", "one", "two"), True, 0)
        u = Variable("u", ("a", "b"))
        task = Task((u, v), (0, None), (), (), (Axiom(((0, 0),), 1, 1), Axiom(((0, 1),), 1, 2)))
        found = errors(validate_task(task))
        assert any("layering" in x.message and x.location == "axiom 1" for x in found)

    def test_body_with_other_value_in_same_layer(self):
        v = Variable("v", ("bot", "top"), True, 0)
        w = Variable("w", ("bot", "top"), True, 0)
        u = Variable("u", ("a", "b"))
        axioms = (Axiom(((0, 0),), 1, 1), Axiom(((1, 0),), 2, 1))
        task = Task((u, v, w), (0, None, None), (), (), axioms)
        assert any("layering" in x.message for x in errors(validate_task(task)))

    def test_effect_on_derived(self):
        v = Variable("v", ("bot", "top"), True, 0)
        u = Variable("u", ("a", "b"))
        task = Task((u, v), (0, None), (), (Operator("bad", (), (Effect((), 1, 1),)),))
        found = errors(validate_task(task))
        assert [x.location for x in found] == ["operator 0 (bad) effect 0"]
        assert "derived" in found[0].message

    def test_initial_value_for_derived(self):
        v = Variable("v", ("bot", "top"), True, 0)
        task = Task((v,), (1,), ())
        assert errors(validate_task(task))

    def test_undefined_head_is_only_a_warning(self):
        v = Variable("v", ("bot", "top"), True, 0)
        u = Variable("u", ("a", "b"))
        found = validate_task(Task((u, v), (0, None), (), (), (Axiom(((0, 0),), 1, 0),)))
        assert found and not errors(found)


class TestValidatePlan:
    def test_narrative_ok(self, grid1):
        check = validate_plan(grid1, narrative(grid1))
        assert check.valid and check.failed_step is None

    def test_empty_plan_on_satisfied_goal(self, grid1):
        task = Task(grid1.variables, grid1.initial, ((0, 0),), grid1.operators)
        assert validate_plan(task, []).valid

    def test_step_seven_removed(self, grid1):
        plan = narrative(grid1)
        del plan[6]
        check = validate_plan(grid1, plan)
        # the drop at (2,1) moves into index 6 and fails there
        assert not check.valid and check.failed_step == 6

    def test_goal_missed(self, grid1):
        check = validate_plan(grid1, narrative(grid1)[:-1])
        assert not check.valid and check.failed_step == 7

    def test_prefixes_of_valid_plans_are_applicable(self, grid1):
        plan = narrative(grid1)
        s = grid1.initial
        for o in plan:
            assert applicable(grid1, s, grid1.operators[o])
            s = apply(grid1, s, grid1.operators[o])
            assert len(s) == len(grid1.variables) and all(x is not None for x in s)
