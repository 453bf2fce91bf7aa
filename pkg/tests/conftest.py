import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mptplan import fixtures  # noqa: E402
from mptplan.compilation import compile_task  # noqa: E402


@pytest.fixture(scope="session")
def grid1():
    return fixtures.load("grid1")


@pytest.fixture(scope="session")
def grid1f():
    return fixtures.load("grid1f")


@pytest.fixture(scope="session")
def transport1():
    return fixtures.load("transport1")


@pytest.fixture(scope="session")
def nonserializable():
    return fixtures.load("nonserializable")


@pytest.fixture(scope="session")
def compiled_grid1(grid1):
    return compile_task(grid1)


@pytest.fixture(scope="session")
def compiled_transport1(transport1):
    return compile_task(transport1)


def op(task, name):
    return task.operator_index(name)


def value(task, var_name, value_name):
    for i, v in enumerate(task.variables):
        if v.name == var_name:
            return i, v.domain.index(value_name)
    raise KeyError(var_name)


def state(task, **values):
    """Fluent values by variable name; unspecified fluents keep their initial value."""
    s = list(task.initial)
    for name, val in values.items():
        i, d = value(task, name, val)
        s[i] = d
    return tuple(s)


NARRATIVE = [
    "move-robot (1,1) (1,2)",
    "move-robot (1,2) (2,2)",
    "move-robot (2,2) (3,2)",
    "pickup-key (3,2)",
    "move-robot (3,2) (2,2)",
    "unlock-door",
    "move-robot (2,2) (2,1)",
    "drop-key (2,1)",
]
