"""Multi-valued planning tasks and their execution semantics.

Variables are referenced by index. A *partial assignment* is a tuple of
``(variable, value)`` pairs. A *state* is a tuple with one entry per
variable, where derived variables hold ``None``; an *extended state* has
an integer for every variable. For derived variables the undefined value
is always domain index 0 (``UNDEFINED``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

UNDEFINED = 0

Pair = tuple[int, int]
PartialAssignment = tuple[Pair, ...]
State = tuple[Optional[int], ...]
ExtendedState = tuple[int, ...]


class PlanningError(ValueError):
    """Base class for errors raised when executing a task."""


class NotApplicable(PlanningError):
    pass


class ConflictingEffects(PlanningError):
    pass


@dataclass(frozen=True)
class Variable:
    name: str
    domain: tuple[str, ...]
    derived: bool = False
    layer: Optional[int] = None

    @property
    def size(self) -> int:
        return len(self.domain)


@dataclass(frozen=True)
class Effect:
    condition: PartialAssignment
    var: int
    value: int


@dataclass(frozen=True)
class Operator:
    name: str
    precondition: PartialAssignment
    effects: tuple[Effect, ...]

    @property
    def affected(self) -> tuple[int, ...]:
        seen: dict[int, None] = {}
        for eff in self.effects:
            seen.setdefault(eff.var)
        return tuple(seen)


@dataclass(frozen=True)
class Axiom:
    condition: PartialAssignment
    var: int
    value: int


@dataclass(frozen=True)
class Task:
    variables: tuple[Variable, ...]
    initial: State
    goal: PartialAssignment
    operators: tuple[Operator, ...] = ()
    axioms: tuple[Axiom, ...] = ()

    @property
    def fluents(self) -> list[int]:
        return [i for i, v in enumerate(self.variables) if not v.derived]

    @property
    def derived(self) -> list[int]:
        return [i for i, v in enumerate(self.variables) if v.derived]

    def axiom_layers(self) -> list[list[int]]:
        """Axiom indices grouped by the layer of their head variable, lowest first."""
        by_layer: dict[int, list[int]] = {}
        for i, ax in enumerate(self.axioms):
            layer = self.variables[ax.var].layer
            by_layer.setdefault(layer if layer is not None else 0, []).append(i)
        return [by_layer[k] for k in sorted(by_layer)]

    def operator_index(self, name: str) -> int:
        for i, op in enumerate(self.operators):
            if op.name == name:
                return i
        raise KeyError(name)

    def fact_name(self, var: int, value: int) -> str:
        v = self.variables[var]
        return f"{v.name}={v.domain[value]}"


def holds(pairs: Iterable[Pair], values: Sequence[Optional[int]]) -> bool:
    return all(values[var] == val for var, val in pairs)


def merge(*assignments: PartialAssignment) -> Optional[dict[int, int]]:
    """Union of partial assignments, or None if two of them disagree."""
    out: dict[int, int] = {}
    for pairs in assignments:
        for var, val in pairs:
            if out.setdefault(var, val) != val:
                return None
    return out


def extended_state(task: Task, state: State, rng: Optional[random.Random] = None) -> ExtendedState:
    """Evaluate the axioms layer by layer by naive repeated scanning.

    With ``rng`` given, the axioms of each layer are scanned in a shuffled
    order on every pass; the result must not depend on it.
    """
    values = [UNDEFINED if v.derived else state[i] for i, v in enumerate(task.variables)]
    for layer in task.axiom_layers():
        order = list(layer)
        changed = True
        while changed:
            changed = False
            if rng is not None:
                rng.shuffle(order)
            for ai in order:
                ax = task.axioms[ai]
                if values[ax.var] != ax.value and holds(ax.condition, values):
                    values[ax.var] = ax.value
                    changed = True
    return tuple(values)


def applicable(task: Task, state: State, op: Operator, ext: Optional[ExtendedState] = None) -> bool:
    if ext is None:
        ext = extended_state(task, state)
    return holds(op.precondition, ext)


def apply(task: Task, state: State, op: Operator, ext: Optional[ExtendedState] = None) -> State:
    if ext is None:
        ext = extended_state(task, state)
    if not holds(op.precondition, ext):
        raise NotApplicable(f"operator {op.name!r} is not applicable")
    new = list(state)
    assigned: dict[int, int] = {}
    for eff in op.effects:
        if holds(eff.condition, ext):
            if assigned.setdefault(eff.var, eff.value) != eff.value:
                raise ConflictingEffects(
                    f"operator {op.name!r} assigns two values to {task.variables[eff.var].name}")
            new[eff.var] = eff.value
    return tuple(new)


def goal_satisfied(task: Task, state: State, ext: Optional[ExtendedState] = None) -> bool:
    if ext is None:
        ext = extended_state(task, state)
    return holds(task.goal, ext)


@dataclass(frozen=True)
class PlanCheck:
    valid: bool
    failed_step: Optional[int] = None
    reason: str = ""
    final_state: Optional[State] = None

    def __bool__(self) -> bool:
        return self.valid


def validate_plan(task: Task, plan: Sequence[int]) -> PlanCheck:
    """Simulate ``plan`` from the initial state.

    ``failed_step`` is the 0-based index of the first inapplicable step, or
    ``len(plan)`` when all steps apply but the goal does not hold at the end.
    """
    state = task.initial
    for i, op_id in enumerate(plan):
        if not 0 <= op_id < len(task.operators):
            return PlanCheck(False, i, f"unknown operator id {op_id}", state)
        op = task.operators[op_id]
        ext = extended_state(task, state)
        if not holds(op.precondition, ext):
            return PlanCheck(False, i, f"{op.name} is not applicable", state)
        try:
            state = apply(task, state, op, ext)
        except ConflictingEffects as exc:
            return PlanCheck(False, i, str(exc), state)
    if not goal_satisfied(task, state):
        return PlanCheck(False, len(plan), "goal not satisfied", state)
    return PlanCheck(True, None, "", state)


@dataclass(frozen=True)
class Violation:
    location: str
    message: str
    severity: str = "error"

    def __str__(self) -> str:
        return f"{self.severity}: {self.location}: {self.message}"


@dataclass
class _Checker:
    task: Task
    found: list[Violation] = field(default_factory=list)

    def report(self, location: str, message: str, severity: str = "error") -> None:
        self.found.append(Violation(location, message, severity))

    def pairs(self, pairs: PartialAssignment, location: str) -> bool:
        n = len(self.task.variables)
        seen: dict[int, int] = {}
        ok = True
        for var, val in pairs:
            if not 0 <= var < n:
                self.report(location, f"variable index {var} out of range")
                ok = False
                continue
            variable = self.task.variables[var]
            if not 0 <= val < variable.size:
                self.report(location, f"value {val} out of range for variable {variable.name}")
                ok = False
            if seen.setdefault(var, val) != val:
                self.report(location, f"two values for variable {variable.name}")
                ok = False
        return ok


def validate_task(task: Task) -> list[Violation]:
    """Return every invariant violation of ``task``; an empty list means ok.

    Conditions that are legal but suspicious are reported with severity
    ``"warning"``.
    """
    c = _Checker(task)
    n = len(task.variables)
    for i, var in enumerate(task.variables):
        loc = f"variable {i} ({var.name})"
        if var.size < 1:
            c.report(loc, "empty domain")
        if len(set(var.domain)) != var.size:
            c.report(loc, "duplicate value names")
        if var.derived and var.layer is None:
            c.report(loc, "derived variable without layer")
        if not var.derived and var.layer is not None:
            c.report(loc, "fluent with a layer")

    if len(task.initial) != n:
        c.report("init", f"expected {n} entries, got {len(task.initial)}")
    else:
        for i, (var, val) in enumerate(zip(task.variables, task.initial)):
            if var.derived and val is not None:
                c.report("init", f"derived variable {var.name} has an initial value")
            elif not var.derived and (val is None or not 0 <= val < var.size):
                c.report("init", f"invalid initial value for {var.name}")

    c.pairs(task.goal, "goal")

    names: dict[str, int] = {}
    for oi, op in enumerate(task.operators):
        loc = f"operator {oi} ({op.name})"
        if op.name in names:
            c.report(loc, f"duplicate operator name (also operator {names[op.name]})")
        names.setdefault(op.name, oi)
        pre_ok = c.pairs(op.precondition, loc + " precondition")
        triggers = []
        for ei, eff in enumerate(op.effects):
            eloc = f"{loc} effect {ei}"
            cond_ok = c.pairs(eff.condition, eloc + " condition")
            if not 0 <= eff.var < n:
                c.report(eloc, f"variable index {eff.var} out of range")
                continue
            variable = task.variables[eff.var]
            if variable.derived:
                c.report(eloc, f"effect on derived variable {variable.name}")
            if not 0 <= eff.value < variable.size:
                c.report(eloc, f"value {eff.value} out of range for variable {variable.name}")
            if pre_ok and cond_ok:
                joint = merge(op.precondition, eff.condition)
                if joint is None:
                    c.report(eloc, "condition contradicts precondition", "warning")
                else:
                    triggers.append((eff, joint))
        for a in range(len(triggers)):
            for b in range(a + 1, len(triggers)):
                (ea, ja), (eb, jb) = triggers[a], triggers[b]
                if ea.var == eb.var and ea.value != eb.value and merge(tuple(ja.items()), tuple(jb.items())) is not None:
                    c.report(loc, f"effects may assign two values to {task.variables[ea.var].name}", "warning")

    heads: dict[tuple[int, int], int] = {}
    for ai, ax in enumerate(task.axioms):
        loc = f"axiom {ai}"
        c.pairs(ax.condition, loc + " body")
        if not 0 <= ax.var < n:
            c.report(loc, f"variable index {ax.var} out of range")
            continue
        variable = task.variables[ax.var]
        if not variable.derived:
            c.report(loc, f"axiom head on fluent {variable.name}")
            continue
        if not 0 <= ax.value < variable.size:
            c.report(loc, f"value {ax.value} out of range for variable {variable.name}")
            continue
        if ax.value == UNDEFINED:
            c.report(loc, f"head assigns the undefined value to {variable.name}", "warning")
        prev = heads.setdefault((variable.layer, ax.var), ax.value)
        if prev != ax.value:
            c.report(loc, f"layering violated: {variable.name} derived with two values in layer {variable.layer}")
    for ai, ax in enumerate(task.axioms):
        if not 0 <= ax.var < n or not task.variables[ax.var].derived:
            continue
        layer = task.variables[ax.var].layer
        for var, val in ax.condition:
            head = heads.get((layer, var))
            if head is not None and head != val:
                c.report(f"axiom {ai} body",
                         f"layering violated: {task.variables[var].name} used with a different value than derived in layer {layer}")
    return c.found


def errors(violations: Iterable[Violation]) -> list[Violation]:
    return [v for v in violations if v.severity == "error"]
