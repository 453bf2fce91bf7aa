"""Random task generators used by the property tests and the demos.

All generators take a ``random.Random`` and return tasks that pass
``validate_task`` without errors.
"""

from __future__ import annotations

import itertools
import random
from typing import Optional

from .task import Axiom, Effect, Operator, Task, Variable, errors, validate_task


def _values(prefix: str, size: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(size))


def _pairs(rng: random.Random, candidates: list[int], sizes: list[int], k: int) -> tuple[tuple[int, int], ...]:
    chosen = rng.sample(candidates, min(k, len(candidates)))
    return tuple(sorted((v, rng.randrange(sizes[v])) for v in chosen))


def random_task(
    rng: random.Random,
    max_vars: int = 6,
    max_domain: int = 5,
    max_operators: int = 30,
    max_layers: int = 2,
    max_derived: int = 3,
    max_body: int = 3,
    max_axioms: int = 8,
) -> Task:
    """A task with layered axioms; derived values other than ⊥ are heads."""
    n = rng.randint(1, max_vars)
    n_derived = rng.randint(0, min(max_derived, n - 1)) if max_layers > 0 else 0
    derived = set(rng.sample(range(n), n_derived))
    variables = []
    head_value: dict[int, int] = {}
    for v in range(n):
        if v in derived:
            size = rng.randint(2, max_domain)
            variables.append(Variable(f"d{v}", ("bot",) + _values("t", size - 1), True, rng.randrange(max_layers)))
            head_value[v] = rng.randint(1, size - 1)
        else:
            variables.append(Variable(f"v{v}", _values("x", rng.randint(1, max_domain))))
    sizes = [var.size for var in variables]
    fluents = [v for v in range(n) if v not in derived]

    axioms = []
    for v in sorted(derived):
        layer = variables[v].layer
        usable = fluents + [u for u in derived if variables[u].layer <= layer]
        for _ in range(rng.randint(0, max_axioms // max(1, n_derived))):
            body = []
            for u in rng.sample(usable, min(len(usable), rng.randint(1, max_body))):
                if u in derived and variables[u].layer == layer:
                    body.append((u, head_value[u]))
                else:
                    body.append((u, rng.randrange(sizes[u])))
            axioms.append(Axiom(tuple(sorted(body)), v, head_value[v]))

    operators = []
    everything = list(range(n))
    for oi in range(rng.randint(0, max_operators) if fluents else 0):
        pre = _pairs(rng, everything, sizes, rng.randint(0, 2))
        effects = []
        for var in rng.sample(fluents, min(len(fluents), rng.randint(1, 2))):
            cond = _pairs(rng, everything, sizes, rng.choice((0, 0, 1)))
            effects.append(Effect(cond, var, rng.randrange(sizes[var])))
        operators.append(Operator(f"op{oi}", pre, tuple(effects)))

    initial = tuple(None if v in derived else rng.randrange(sizes[v]) for v in range(n))
    goal = _pairs(rng, everything, sizes, rng.randint(1, min(2, n)))
    task = Task(tuple(variables), initial, goal, tuple(operators), tuple(axioms))
    assert not errors(validate_task(task)), errors(validate_task(task))
    return task


def random_acyclic_task(
    rng: random.Random,
    max_vars: int = 4,
    max_domain: int = 4,
    max_operators: int = 16,
    derived: bool = True,
) -> Task:
    """Conditions only mention lower-indexed variables, so the causal graph is acyclic.

    Operators are unary. A derived variable gets its own layer and axioms
    over lower-indexed variables.
    """
    n = rng.randint(1, max_vars)
    variables = []
    layer = 0
    for v in range(n):
        if derived and v > 0 and rng.random() < 0.25:
            size = rng.randint(2, max_domain)
            variables.append(Variable(f"d{v}", ("bot",) + _values("t", size - 1), True, layer))
            layer += 1
        else:
            variables.append(Variable(f"v{v}", _values("x", rng.randint(2, max_domain))))
    sizes = [var.size for var in variables]
    fluents = [v for v in range(n) if not variables[v].derived]

    axioms = []
    for v in range(n):
        if variables[v].derived:
            head = rng.randint(1, sizes[v] - 1)
            for _ in range(rng.randint(1, 3)):
                axioms.append(Axiom(_pairs(rng, list(range(v)), sizes, rng.randint(1, 2)), v, head))

    operators = []
    for oi in range(rng.randint(1, max_operators)):
        v = rng.choice(fluents)
        pre = list(_pairs(rng, list(range(v)), sizes, rng.randint(0, 2)))
        if rng.random() < 0.8:
            pre.append((v, rng.randrange(sizes[v])))
        operators.append(Operator(f"op{oi}", tuple(sorted(pre)), (Effect((), v, rng.randrange(sizes[v])),)))

    initial = tuple(None if var.derived else rng.randrange(var.size) for var in variables)
    goal = _pairs(rng, list(range(n)), sizes, rng.randint(1, min(2, n)))
    task = Task(tuple(variables), initial, goal, tuple(operators), tuple(axioms))
    assert not errors(validate_task(task))
    return task


def random_easy_task(
    rng: random.Random,
    max_vars: int = 5,
    max_domain: int = 4,
    extra_operators: int = 6,
    goal_size: Optional[int] = None,
) -> Task:
    """A task meeting the acyclic-CG / strongly-connected-DTG conditions.

    Every variable has a cycle of value changes through its whole domain;
    operator conditions only mention lower-indexed variables.
    """
    n = rng.randint(1, max_vars)
    sizes = [rng.randint(2, max_domain) for _ in range(n)]
    variables = tuple(Variable(f"v{v}", _values("x", sizes[v])) for v in range(n))
    operators = []

    def add(v: int, source: Optional[int], target: int) -> None:
        pre = list(_pairs(rng, list(range(v)), sizes, rng.randint(0, 2)))
        if source is not None:
            pre.append((v, source))
        operators.append(Operator(f"op{len(operators)}", tuple(sorted(pre)), (Effect((), v, target),)))

    for v in range(n):
        for d in range(sizes[v]):
            add(v, d, (d + 1) % sizes[v])
    for _ in range(rng.randint(0, extra_operators)):
        v = rng.randrange(n)
        add(v, rng.choice([None] + list(range(sizes[v]))), rng.randrange(sizes[v]))

    initial = tuple(rng.randrange(s) for s in sizes)
    k = goal_size if goal_size is not None else rng.randint(1, n)
    goal = _pairs(rng, list(range(n)), sizes, k)
    task = Task(variables, initial, goal, tuple(operators))
    assert not errors(validate_task(task))
    return task


def without_operator(task: Task, name: str) -> Task:
    """Copy of ``task`` with every operator of that name removed."""
    return Task(task.variables, task.initial, task.goal,
                tuple(op for op in task.operators if op.name != name), task.axioms)


def all_states(task: Task):
    """Every state of a (small) task, fluents enumerated in declaration order."""
    ranges = [range(v.size) if not v.derived else (None,) for v in task.variables]
    return itertools.product(*ranges)


__all__ = ["all_states", "random_acyclic_task", "random_easy_task", "random_task", "without_operator"]
