"""Bundled graphs with known attributes.

Each fixture is an edge-list file under ``data/`` whose leading comment lines
hold ``key: value`` attributes.  ``cyclic_connectivity`` is ``inf`` when the
graph has no cyclic edge-cut; ``chi`` is the certified fractional total
chromatic number when it was computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .graph import INFINITY, Graph
from .graphio import parse_edge_list

NAMES = (
    "K2", "P3", "C4", "C5", "C6", "C7", "K4", "K6", "K2_2", "K3_3",
    "petersen", "heawood", "mcgee", "pappus", "dodecahedron",
)


@dataclass(frozen=True)
class Fixture:
    name: str
    text: str
    graph: Graph
    girth: int | float
    max_degree: int
    cyclic_connectivity: int | float
    chi: Fraction | None


def _number(s: str) -> int | float:
    return INFINITY if s == "inf" else int(s)


def parse_fixture(name: str, text: str) -> Fixture:
    attrs = {}
    for line in text.splitlines():
        if not line.startswith("#"):
            break
        key, sep, value = line[1:].partition(":")
        if sep:
            attrs[key.strip()] = value.strip()
    chi = attrs.get("chi")
    return Fixture(
        name,
        text,
        parse_edge_list(text),
        _number(attrs["girth"]),
        int(attrs["max_degree"]),
        _number(attrs["cyclic_connectivity"]),
        Fraction(chi) if chi else None,
    )


@lru_cache(maxsize=None)
def load(name: str) -> Fixture:
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(NAMES)}")
    text = resources.files(__package__).joinpath("data", f"{name}.edges").read_text(encoding="utf-8")
    return parse_fixture(name, text)


def all_fixtures() -> list[Fixture]:
    return [load(n) for n in NAMES]
