"""Small hand-made tasks used by the tests, the demos and the CLI examples."""

from __future__ import annotations

from importlib import resources

from ..task import Task
from ..textio import parse_mpt

NAMES = ("grid1", "grid1f", "transport1", "nonserializable")


def text(name: str) -> str:
    return resources.files(__name__).joinpath(f"{name}.mpt").read_text(encoding="utf-8")


def path(name: str):
    return resources.files(__name__).joinpath(f"{name}.mpt")


def load(name: str) -> Task:
    return parse_mpt(text(name))
