"""Line-oriented text format for tasks and plans.

A task file looks like::

    mpt 1
    variables 2
    var light fluent - 2
    off
    on
    var lit derived 0 2
    none
    yes
    init 0
    goal 1
    1 1
    operators 1
    switch-on
    pre 1
    0 0
    effects 1
    0 0 1
    axioms 1
    1 0 1 1 1

Blank lines and lines starting with ``#`` are ignored. Effects and axioms
are single lines: the condition count, the condition pairs, then the
affected variable and its new value. Indices are 0-based.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Sequence, TextIO, Union

from .task import Axiom, Effect, Operator, Task, Variable, errors, validate_task

FORMAT_VERSION = 1


class MptSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class MptSemanticError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class _Lines:
    def __init__(self, text: str):
        self._items = []
        for number, raw in enumerate(text.splitlines(), start=1):
            stripped = raw.strip()
            if stripped and not stripped.startswith("#"):
                self._items.append((number, stripped))
        self._pos = 0
        self.columns: list[int] = []

    @property
    def last_line(self) -> int:
        if self._pos == 0:
            return 1
        return self._items[min(self._pos, len(self._items)) - 1][0]

    def next(self, what: str) -> tuple[int, str]:
        if self._pos >= len(self._items):
            line = self._items[-1][0] + 1 if self._items else 1
            raise MptSyntaxError(f"unexpected end of file, expected {what}", line)
        item = self._items[self._pos]
        self._pos += 1
        return item

    def keyword(self, word: str) -> tuple[int, list[str]]:
        number, line = self.next(f"'{word}'")
        matches = list(re.finditer(r"\S+", line))
        fields = [m.group() for m in matches]
        if fields[0] != word:
            raise MptSyntaxError(f"expected '{word}', found '{fields[0]}'", number)
        # 1-based columns of the fields after the keyword
        self.columns = [m.start() + 1 for m in matches[1:]]
        return number, fields[1:]

    def counted(self, word: str) -> tuple[int, int]:
        number, rest = self.keyword(word)
        if len(rest) != 1:
            raise MptSyntaxError(f"'{word}' takes exactly one count", number)
        return number, _int(rest[0], number, self.columns[0])

    def ints(self, what: str) -> tuple[int, list[int]]:
        number, line = self.next(what)
        out = []
        for match in re.finditer(r"\S+", line):
            out.append(_int(match.group(), number, match.start() + 1))
        return number, out

    def at_end(self) -> bool:
        return self._pos >= len(self._items)


def _int(token: str, line: int, column: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise MptSyntaxError(f"expected an integer, found {token!r}", line, column) from None
    if value < 0:
        raise MptSyntaxError(f"negative index {value}", line, column)
    return value


def _pair_line(lines: _Lines, what: str) -> tuple[int, tuple[int, int]]:
    number, vals = lines.ints(what)
    if len(vals) != 2:
        raise MptSyntaxError(f"expected a variable/value pair, found {len(vals)} numbers", number)
    return number, (vals[0], vals[1])


def _conditional(number: int, vals: list[int]) -> tuple[tuple[tuple[int, int], ...], int, int]:
    if not vals:
        raise MptSyntaxError("empty line", number)
    count = vals[0]
    if len(vals) != 1 + 2 * count + 2:
        raise MptSyntaxError(f"expected {1 + 2 * count + 2} numbers for {count} conditions, found {len(vals)}", number)
    cond = tuple((vals[1 + 2 * i], vals[2 + 2 * i]) for i in range(count))
    return cond, vals[-2], vals[-1]


def parse_mpt(source: Union[str, TextIO]) -> Task:
    """Parse a task file; raises MptSyntaxError or MptSemanticError."""
    text = source if isinstance(source, str) else source.read()
    lines = _Lines(text)
    number, rest = lines.keyword("mpt")
    if rest != [str(FORMAT_VERSION)]:
        raise MptSyntaxError(f"unsupported format version {' '.join(rest)!r}", number)

    origin: dict[str, int] = {}
    _, n_vars = lines.counted("variables")
    variables = []
    for i in range(n_vars):
        number, fields = lines.keyword("var")
        if len(fields) != 4:
            raise MptSyntaxError("expected 'var <name> <kind> <layer|-> <domain-size>'", number)
        name, kind, layer_tok, size_tok = fields
        if kind not in ("fluent", "derived"):
            raise MptSyntaxError(f"unknown variable kind {kind!r}", number)
        layer = None if layer_tok == "-" else _int(layer_tok, number, lines.columns[2])
        size = _int(size_tok, number, lines.columns[3])
        domain = tuple(lines.next(f"value name for {name}")[1] for _ in range(size))
        origin[f"variable {i} ({name})"] = number
        variables.append(Variable(name, domain, kind == "derived", layer))
    n = len(variables)

    number, rest = lines.keyword("init")
    origin["init"] = number
    fluents = [i for i, v in enumerate(variables) if not v.derived]
    vals = [_int(tok, number, col) for tok, col in zip(rest, lines.columns)]
    if len(vals) != len(fluents):
        raise MptSemanticError(f"init lists {len(vals)} values for {len(fluents)} fluents", number)
    initial: list = [None] * n
    for var, val in zip(fluents, vals):
        initial[var] = val

    number, n_goal = lines.counted("goal")
    origin["goal"] = number
    goal = tuple(_pair_line(lines, "goal pair")[1] for _ in range(n_goal))

    _, n_ops = lines.counted("operators")
    operators = []
    for oi in range(n_ops):
        number, name = lines.next("operator name")
        loc = f"operator {oi} ({name})"
        origin[loc] = number
        num, n_pre = lines.counted("pre")
        origin[loc + " precondition"] = num
        pre = tuple(_pair_line(lines, "precondition pair")[1] for _ in range(n_pre))
        _, n_eff = lines.counted("effects")
        effects = []
        for ei in range(n_eff):
            num, vals = lines.ints("effect")
            origin[f"{loc} effect {ei}"] = num
            origin[f"{loc} effect {ei} condition"] = num
            cond, var, val = _conditional(num, vals)
            effects.append(Effect(cond, var, val))
        operators.append(Operator(name, pre, tuple(effects)))

    _, n_axioms = lines.counted("axioms")
    axioms = []
    for ai in range(n_axioms):
        num, vals = lines.ints("axiom")
        origin[f"axiom {ai}"] = num
        origin[f"axiom {ai} body"] = num
        cond, var, val = _conditional(num, vals)
        axioms.append(Axiom(cond, var, val))

    if not lines.at_end():
        number, line = lines.next("end of file")
        raise MptSyntaxError(f"trailing content {line!r}", number)

    task = Task(tuple(variables), tuple(initial), goal, tuple(operators), tuple(axioms))
    problems = errors(validate_task(task))
    if problems:
        first = problems[0]
        raise MptSemanticError(f"{first.location}: {first.message}", origin.get(first.location, lines.last_line))
    return task


def write_mpt(task: Task) -> str:
    out = [f"mpt {FORMAT_VERSION}", f"variables {len(task.variables)}"]
    for var in task.variables:
        kind = "derived" if var.derived else "fluent"
        layer = "-" if var.layer is None else str(var.layer)
        out.append(f"var {var.name} {kind} {layer} {var.size}")
        out.extend(var.domain)
    fluent_vals = [str(task.initial[i]) for i in task.fluents]
    out.append(" ".join(["init"] + fluent_vals))
    out.append(f"goal {len(task.goal)}")
    out.extend(f"{var} {val}" for var, val in task.goal)
    out.append(f"operators {len(task.operators)}")
    for op in task.operators:
        out.append(op.name)
        out.append(f"pre {len(op.precondition)}")
        out.extend(f"{var} {val}" for var, val in op.precondition)
        out.append(f"effects {len(op.effects)}")
        for eff in op.effects:
            out.append(_conditional_line(eff.condition, eff.var, eff.value))
    out.append(f"axioms {len(task.axioms)}")
    for ax in task.axioms:
        out.append(_conditional_line(ax.condition, ax.var, ax.value))
    return "\n".join(out) + "\n"


def _conditional_line(cond, var: int, value: int) -> str:
    fields = [str(len(cond))]
    for v, d in cond:
        fields += [str(v), str(d)]
    fields += [str(var), str(value)]
    return " ".join(fields)


def canonical_text(text: str) -> str:
    """Strip comments, blank lines and surrounding whitespace."""
    kept = [line.strip() for line in text.splitlines()]
    return "".join(line + "\n" for line in kept if line and not line.startswith("#"))


class PlanFormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def write_plan(task: Task, plan: Sequence[int]) -> str:
    lines = ["begin_plan"] + [task.operators[i].name for i in plan] + ["end_plan"]
    return "\n".join(lines) + "\n"


def parse_plan(task: Task, source: Union[str, TextIO]) -> list[int]:
    text = source if isinstance(source, str) else source.read()
    index = {}
    for i, op in enumerate(task.operators):
        index.setdefault(op.name, i)
    items = [(n, line.strip()) for n, line in enumerate(text.splitlines(), start=1)
             if line.strip() and not line.strip().startswith("#")]
    if not items or items[0][1] != "begin_plan":
        raise PlanFormatError("expected 'begin_plan'", items[0][0] if items else 1)
    if len(items) < 2 or items[-1][1] != "end_plan":
        raise PlanFormatError("expected 'end_plan'", items[-1][0] + 1)
    plan = []
    for number, name in items[1:-1]:
        if name not in index:
            raise PlanFormatError(f"unknown operator {name!r}", number)
        plan.append(index[name])
    return plan


def iter_names(task: Task, plan: Iterable[int]) -> Iterator[str]:
    for i in plan:
        yield task.operators[i].name
