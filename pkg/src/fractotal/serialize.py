"""JSON codecs.  Rationals are always written as ``"num/den"`` strings."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .graph import Graph
from .intervals import IntervalSet, PiecewiseIsometry
from .total import TotalElement


def q2s(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def s2q(s: str) -> Fraction:
    if not isinstance(s, str) or any(c in s for c in ".eE"):
        raise ValueError(f"not an exact rational string: {s!r}")
    return Fraction(s)


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def interval_set_to_json(a: IntervalSet) -> list[list[str]]:
    return [[q2s(lo), q2s(hi)] for lo, hi in a.spans]


def interval_set_from_json(data) -> IntervalSet:
    return IntervalSet((s2q(lo), s2q(hi)) for lo, hi in data)


def isometry_to_json(iso: PiecewiseIsometry) -> dict:
    return {
        "length": q2s(iso.length),
        "pieces": [{"src": [q2s(a), q2s(b)], "offset": q2s(t)} for a, b, t in iso.pieces],
    }


def isometry_from_json(data) -> PiecewiseIsometry:
    return PiecewiseIsometry(
        s2q(data["length"]),
        [(s2q(p["src"][0]), s2q(p["src"][1]), s2q(p["offset"])) for p in data["pieces"]],
    )


def element_to_str(g: Graph, el: TotalElement) -> str:
    if el.kind == "v":
        return f"v:{g.labels[el.index]}"
    a, b = g.edge_labels(el.index)
    return f"e:{a}-{b}"


def element_from_str(g: Graph, s: str) -> TotalElement:
    kind, _, body = s.partition(":")
    if kind == "v" and g.has_vertex(body):
        return TotalElement("v", g.vertex(body))
    if kind == "e":
        # labels may themselves contain '-', so try every split point
        for i, ch in enumerate(body):
            if ch == "-":
                e = g.edge_between(body[:i], body[i + 1:])
                if e is not None:
                    return TotalElement("e", e)
    raise KeyError(f"element {s!r} does not resolve in the graph")


def tis_to_json(g: Graph, s) -> list[str]:
    from .total import total_structure

    ts = total_structure(g)
    return [element_to_str(g, el) for el in sorted(s, key=ts.sort_key)]


def tis_from_json(g: Graph, data) -> frozenset[TotalElement]:
    return frozenset(element_from_str(g, x) for x in data)
