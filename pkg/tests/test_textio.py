import random
import re

import pytest
from hypothesis import given, settings, strategies as st

from mptplan import fixtures
from mptplan.compilation import compile_task
from mptplan.dot import export_dot
from mptplan.random_tasks import random_task
from mptplan.task import Effect, Operator, Task, Variable
from mptplan.textio import (
    MptSemanticError,
    MptSyntaxError,
    PlanFormatError,
    canonical_text,
    parse_mpt,
    parse_plan,
    write_mpt,
    write_plan,
)

ARC = re.compile(r"^\s*v(\d+) -> v(\d+)", re.M)


class TestParse:
    def test_grid1_counts(self, grid1):
        assert len(grid1.variables) == 3
        assert len(grid1.axioms) == 0
        assert [v.size for v in grid1.variables] == [6, 7, 2]

    def test_grid1f_counts(self, grid1f):
        assert len(grid1f.variables) == 4
        assert len(grid1f.axioms) == 2
        assert len(grid1f.axiom_layers()) == 1

    def test_goal_value_out_of_range_names_variable(self):
        text = fixtures.text("grid1").replace("goal 1\n1 1\n", "goal 1\n1 9\n")
        with pytest.raises(MptSemanticError) as err:
            parse_mpt(text)
        assert "variable k" in str(err.value)
        assert err.value.line >= 1

    def test_syntax_error_has_line_and_column(self):
        text = fixtures.text("grid1").replace("init 0 5 0", "init 0 x 0")
        with pytest.raises(MptSyntaxError) as err:
            parse_mpt(text)
        assert err.value.line == text.splitlines().index("init 0 x 0") + 1
        assert err.value.column == len("init 0 ") + 1

    def test_unknown_version(self):
        with pytest.raises(MptSyntaxError):
            parse_mpt("mpt 2\n")

    def test_layering_violation_is_semantic(self):
        text = ("mpt 1\nvariables 2\nvar u fluent - 2\na\nb\nvar v derived 0 3\nbot\none\ntwo\n"
                "init 0\ngoal 0\noperators 0\naxioms 2\n1 0 0 1 1\n1 0 1 1 2\n")
        with pytest.raises(MptSemanticError) as err:
            parse_mpt(text)
        assert err.value.line == 15

    def test_truncated_file(self):
        with pytest.raises(MptSyntaxError):
            parse_mpt("mpt 1\nvariables 1\n")


class TestWrite:
    @pytest.mark.parametrize("name", fixtures.NAMES)
    def test_round_trip_is_canonical(self, name):
        text = fixtures.text(name)
        assert write_mpt(parse_mpt(text)) == canonical_text(text)

    def test_transport_reparses_equal(self, transport1):
        assert parse_mpt(write_mpt(transport1)) == transport1

    def test_empty_operator_section(self):
        task = Task((Variable("x", ("a",)),), (0,), (), ())
        text = write_mpt(task)
        assert "\noperators 0\naxioms 0\n" in text
        assert parse_mpt(text) == task

    @settings(max_examples=80, deadline=None)
    @given(st.integers(0, 10**6))
    def test_round_trip_random(self, seed):
        task = random_task(random.Random(seed))
        assert parse_mpt(write_mpt(task)) == task


class TestPlans:
    def test_plan_round_trip(self, grid1):
        plan = [1, 8, 11]
        text = write_plan(grid1, plan)
        assert text.startswith("begin_plan\n") and text.endswith("end_plan\n")
        assert parse_plan(grid1, text) == plan

    def test_unknown_operator(self, grid1):
        with pytest.raises(PlanFormatError) as err:
            parse_plan(grid1, "begin_plan\nfly\nend_plan\n")
        assert err.value.line == 2


class TestDot:
    def test_transport_vehicles_point_at_parcels(self, transport1):
        compiled = compile_task(transport1, prune=False)
        names = [v.name for v in transport1.variables]
        arcs = {(names[int(a)], names[int(b)]) for a, b in ARC.findall(export_dot(compiled, "cg"))}
        vehicles, parcels = ["c1", "c2", "c3", "t"], ["p1", "p2"]
        assert arcs == {(v, p) for v in vehicles for p in parcels}

    def test_grid1_door_dtg_has_two_vertices(self, compiled_grid1):
        text = export_dot(compiled_grid1, "dtg:d")
        assert re.findall(r'^\s*d\d+ \[label="(\w+)"\]', text, re.M) == ["closed", "open"]
        assert 'd0 -> d1 [label="r=(2,2), k=carried; w=1"]' in text

    def test_single_variable(self):
        x = Variable("x", ("a", "b"))
        task = Task((x,), (0,), ((0, 1),), (Operator("go", (), (Effect((), 0, 1),)),))
        text = export_dot(compile_task(task), "cg")
        assert 'v0 [label="x"]' in text and "->" not in text

    def test_pruned_cg_is_a_subset(self, compiled_grid1):
        full = set(ARC.findall(export_dot(compiled_grid1, "cg")))
        pruned = set(ARC.findall(export_dot(compiled_grid1, "pruned-cg")))
        assert pruned < full

    def test_deterministic(self, grid1f):
        kinds = ["cg", "pruned-cg", "dtg:r", "dtg:f", "xdtg:f"]
        first = [export_dot(compile_task(grid1f), k) for k in kinds]
        assert first == [export_dot(compile_task(grid1f), k) for k in kinds]

    def test_bad_kind(self, compiled_grid1):
        with pytest.raises(ValueError):
            export_dot(compiled_grid1, "xdtg:r")
        with pytest.raises(KeyError):
            export_dot(compiled_grid1, "dtg:nope")
