"""Domain transition graphs, usage polarity and extended DTGs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from ..task import UNDEFINED, PartialAssignment, Task, merge

DEFAULT_DISJUNCT_CAP = 100_000


class DnfSizeError(RuntimeError):
    pass


@dataclass(frozen=True)
class Transition:
    source: int
    target: int
    condition: PartialAssignment
    weight: int
    # ("op", operator, effect) | ("axiom", axiom) | ("negation", axioms...)
    origin: tuple

    @property
    def operator(self) -> Optional[int]:
        return self.origin[1] if self.origin[0] == "op" else None

    def inducers(self) -> list[tuple[str, int]]:
        """The operators/axioms responsible for this transition."""
        kind = self.origin[0]
        if kind == "op":
            return [("op", self.origin[1])]
        if kind == "axiom":
            return [("axiom", self.origin[1])]
        return [("axiom", a) for a in self.origin[1:]]


@dataclass(frozen=True)
class Dtg:
    var: int
    size: int
    transitions: tuple[Transition, ...]
    extended: bool = False

    def outgoing(self, value: int) -> list[Transition]:
        return [t for t in self.transitions if t.source == value]


def _sorted(pairs: Iterable[tuple[int, int]]) -> PartialAssignment:
    return tuple(sorted(pairs))


def build_dtg(task: Task, v: int) -> Dtg:
    var = task.variables[v]
    arcs: list[Transition] = []

    def add(cond: dict[int, int], target: int, weight: int, origin: tuple) -> None:
        label = _sorted((u, e) for u, e in cond.items() if u != v)
        if v in cond:
            # a self-loop changes nothing
            if cond[v] != target:
                arcs.append(Transition(cond[v], target, label, weight, origin))
        else:
            for d in range(var.size):
                if d != target:
                    arcs.append(Transition(d, target, label, weight, origin))

    if var.derived:
        for ai, ax in enumerate(task.axioms):
            if ax.var == v:
                cond = merge(ax.condition)
                if cond is not None:
                    add(cond, ax.value, 0, ("axiom", ai))
    else:
        for oi, op in enumerate(task.operators):
            for ei, eff in enumerate(op.effects):
                if eff.var == v:
                    cond = merge(op.precondition, eff.condition)
                    # trivially false conditions never fire
                    if cond is not None:
                        add(cond, eff.value, 1, ("op", oi, ei))
    return Dtg(v, var.size, tuple(arcs))


@dataclass(frozen=True)
class Polarity:
    positive: bool = False
    negative: bool = False


def usage_polarity(task: Task) -> dict[int, Polarity]:
    """Least fixpoint of the positive/negative usage rules for derived variables."""
    derived = set(task.derived)
    pos: set[int] = set()
    neg: set[int] = set()

    def mark(pairs: PartialAssignment, flip: bool, into_pos: set[int], into_neg: set[int]) -> None:
        for u, e in pairs:
            if u in derived:
                is_neg = (e == UNDEFINED) != flip
                (into_neg if is_neg else into_pos).add(u)

    mark(task.goal, False, pos, neg)
    for op in task.operators:
        mark(op.precondition, False, pos, neg)
        for eff in op.effects:
            mark(eff.condition, False, pos, neg)

    changed = True
    while changed:
        before = (len(pos), len(neg))
        for ax in task.axioms:
            if ax.var in pos:
                mark(ax.condition, False, pos, neg)
            if ax.var in neg:
                mark(ax.condition, True, pos, neg)
        changed = (len(pos), len(neg)) != before
    return {v: Polarity(v in pos, v in neg) for v in sorted(derived)}


def _simplify(disjuncts: list[PartialAssignment]) -> list[PartialAssignment]:
    out: list[PartialAssignment] = []
    seen: set[PartialAssignment] = set()
    for d in disjuncts:
        if d not in seen:
            seen.add(d)
            out.append(d)
    sets = [frozenset(d) for d in out]
    return [d for d, s in zip(out, sets) if not any(o < s for o in sets)]


def negate_dnf(
    disjuncts: Sequence[PartialAssignment],
    domain_sizes: Sequence[int],
    cap: int = DEFAULT_DISJUNCT_CAP,
) -> list[PartialAssignment]:
    """Negate a DNF of equality literals into a DNF of equality literals.

    Each disjunct negates to a clause of inequalities, and ``u != e`` becomes
    the disjunction of ``u = e'`` over the rest of the finite domain. The
    clauses are multiplied out one at a time, dropping contradictory,
    duplicate and dominated conjunctions after every step.
    """
    result: list[PartialAssignment] = [()]
    for conj in disjuncts:
        clause = [(u, e2) for u, e in conj for e2 in range(domain_sizes[u]) if e2 != e]
        product: list[PartialAssignment] = []
        for partial in result:
            values = dict(partial)
            for u, e in clause:
                have = values.get(u)
                if have is None:
                    product.append(_sorted(list(partial) + [(u, e)]))
                elif have == e:
                    product.append(partial)
                if len(product) > cap:
                    raise DnfSizeError(f"intermediate DNF exceeds {cap} disjuncts")
        result = _simplify(product)
        if not result:
            break
    return result


def trigger_dnf(task: Task, v: int, value: int) -> list[PartialAssignment]:
    """Bodies of the axioms that can set ``v`` to ``value``.

    A body requiring ``v = value`` itself can never be the first to fire,
    so such axioms are left out.
    """
    out = []
    for ax in task.axioms:
        if ax.var == v and ax.value == value:
            body = merge(ax.condition)
            if body is not None and v not in body:
                out.append(tuple(body.items()))
    return out


def build_extended_dtg(task: Task, v: int, cap: int = DEFAULT_DISJUNCT_CAP) -> Dtg:
    base = build_dtg(task, v)
    var = task.variables[v]
    sizes = [x.size for x in task.variables]
    extra: list[Transition] = []
    for d in range(var.size):
        if d == UNDEFINED:
            continue
        axioms = tuple(ai for ai, ax in enumerate(task.axioms)
                       if ax.var == v and ax.value == d and (v, d) not in ax.condition)
        for label in negate_dnf(trigger_dnf(task, v, d), sizes, cap):
            extra.append(Transition(d, UNDEFINED, label, 0, ("negation",) + axioms))
    return Dtg(v, var.size, base.transitions + tuple(extra), extended=True)


def build_dtgs(task: Task, polarity: Optional[dict[int, Polarity]] = None) -> list[Dtg]:
    if polarity is None:
        polarity = usage_polarity(task)
    out = []
    for v in range(len(task.variables)):
        p = polarity.get(v)
        if p is not None and p.negative:
            out.append(build_extended_dtg(task, v))
        else:
            out.append(build_dtg(task, v))
    return out


def prune_dtg(dtg: Dtg, level: Sequence[int]) -> Dtg:
    """Drop conditions on higher-level variables, then dominated and duplicate transitions."""
    v = dtg.var
    stripped = [
        Transition(t.source, t.target, tuple(p for p in t.condition if level[p[0]] < level[v]), t.weight, t.origin)
        for t in dtg.transitions
    ]
    return Dtg(v, dtg.size, tuple(remove_dominated(stripped)), dtg.extended)


def remove_dominated(transitions: Sequence[Transition]) -> list[Transition]:
    kept: list[Transition] = []
    seen: set[tuple] = set()
    for t in transitions:
        key = (t.source, t.target, t.condition)
        if key not in seen:
            seen.add(key)
            kept.append(t)
    by_edge: dict[tuple[int, int], list[frozenset]] = {}
    for t in kept:
        by_edge.setdefault((t.source, t.target), []).append(frozenset(t.condition))
    out = []
    for t in kept:
        cond = frozenset(t.condition)
        if not any(other < cond for other in by_edge[(t.source, t.target)]):
            out.append(t)
    return out
