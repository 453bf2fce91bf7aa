"""Decision-tree index from extended states to applicable operators."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from ..task import ExtendedState, Task


@dataclass(frozen=True)
class GeneratorNode:
    operators: tuple[int, ...]


@dataclass(frozen=True)
class SelectorNode:
    var: int
    children: tuple["Node", ...]
    dont_care: "Node"


Node = Union[GeneratorNode, SelectorNode]


@dataclass(frozen=True)
class SuccessorGenerator:
    root: Node

    def applicable(self, ext: ExtendedState) -> list[int]:
        return generate_applicable(self, ext)


def build_successor_generator(task: Task) -> SuccessorGenerator:
    pre = [dict(op.precondition) for op in task.operators]
    n = len(task.variables)

    def build(ops: list[int], start: int) -> Node:
        for v in range(start, n):
            if any(v in pre[o] for o in ops):
                children = tuple(
                    build([o for o in ops if pre[o].get(v) == d], v + 1)
                    for d in range(task.variables[v].size)
                )
                rest = build([o for o in ops if v not in pre[o]], v + 1)
                return SelectorNode(v, children, rest)
        return GeneratorNode(tuple(ops))

    return SuccessorGenerator(build(list(range(len(task.operators))), 0))


def generate_applicable(sg: SuccessorGenerator, ext: ExtendedState) -> list[int]:
    out: list[int] = []
    stack: list[Node] = [sg.root]
    while stack:
        node = stack.pop()
        if isinstance(node, GeneratorNode):
            out.extend(node.operators)
        else:
            stack.append(node.dont_care)
            stack.append(node.children[ext[node.var]])
    out.sort()
    return out


def generator_leaves(sg: SuccessorGenerator) -> list[tuple[tuple[tuple[int, int], ...], tuple[int, ...]]]:
    """Every generator node with the non-don't-care labels on its root path."""
    out = []

    def walk(node: Node, path: Sequence[tuple[int, int]]) -> None:
        if isinstance(node, GeneratorNode):
            out.append((tuple(path), node.operators))
            return
        for d, child in enumerate(node.children):
            walk(child, list(path) + [(node.var, d)])
        walk(node.dont_care, path)

    walk(sg.root, [])
    return out
