"""Total graphs and total independent sets.

A total element is a vertex or an edge of G.  Internally every element gets a
position (vertices first, then edges, each in id order) and conflicts in the
total graph are stored as integer bitmasks over positions.
"""

from __future__ import annotations

import os
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Iterator, Mapping, NamedTuple

from .graph import Graph

DEFAULT_ENUMERATION_BUDGET = int(os.environ.get("FRACTOTAL_BUDGET", "40"))


class TotalElement(NamedTuple):
    kind: str  # "v" or "e"
    index: int

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"


def V(i: int) -> TotalElement:
    return TotalElement("v", i)


def E(j: int) -> TotalElement:
    return TotalElement("e", j)


class BudgetExceeded(RuntimeError):
    """Full enumeration refused; use column generation instead."""


class TotalStructure:
    """Positions and conflict masks of the total graph of ``graph``."""

    def __init__(self, graph: Graph):
        self.graph = graph
        n, m = graph.n, graph.m
        self.elements = [V(i) for i in range(n)] + [E(j) for j in range(m)]
        self.position = {el: p for p, el in enumerate(self.elements)}
        conflict = [0] * (n + m)

        def link(p, q):
            conflict[p] |= 1 << q
            conflict[q] |= 1 << p

        for j, (u, v) in enumerate(graph.edges):
            link(u, v)
            link(u, n + j)
            link(v, n + j)
        for v in range(n):
            inc = graph.incident[v]
            for a in range(len(inc)):
                for b in range(a + 1, len(inc)):
                    link(n + inc[a], n + inc[b])
        self.conflict = conflict
        self.size = n + m
        self.full = (1 << self.size) - 1

    def mask(self, elements: Iterable[TotalElement]) -> int:
        out = 0
        for el in elements:
            out |= 1 << self.position[el]
        return out

    def unmask(self, mask: int) -> frozenset[TotalElement]:
        out = []
        p = 0
        while mask:
            if mask & 1:
                out.append(self.elements[p])
            mask >>= 1
            p += 1
        return frozenset(out)

    def sort_key(self, el: TotalElement) -> int:
        return self.position[el]


@lru_cache(maxsize=512)
def total_structure(g: Graph) -> TotalStructure:
    return TotalStructure(g)


def elements(g: Graph) -> list[TotalElement]:
    return list(total_structure(g).elements)


def adjacent(g: Graph, x: TotalElement, y: TotalElement) -> bool:
    """Adjacency or incidence of two distinct elements of ``g``."""
    if x == y:
        return False
    if x.kind == "v" and y.kind == "v":
        return g.edge_id(x.index, y.index) is not None
    if x.kind == "e" and y.kind == "e":
        return bool(set(g.edges[x.index]) & set(g.edges[y.index]))
    v, e = (x, y) if x.kind == "v" else (y, x)
    return v.index in g.edges[e.index]


def _check_element(g: Graph, el: TotalElement) -> None:
    limit = g.n if el.kind == "v" else g.m if el.kind == "e" else -1
    if not 0 <= el.index < limit:
        raise KeyError(f"element {el} does not resolve in the graph")


def is_total_independent(g: Graph, s: Iterable[TotalElement]) -> bool:
    s = list(s)
    for el in s:
        _check_element(g, el)
    return not any(adjacent(g, x, y) for i, x in enumerate(s) for y in s[i + 1:])


def total_graph(g: Graph) -> Graph:
    """The total graph, labelled ``v:<label>`` and ``e:<label>-<label>``."""
    from .serialize import element_to_str

    ts = total_structure(g)
    labels = [element_to_str(g, el) for el in ts.elements]
    edges = []
    for p in range(ts.size):
        mask = ts.conflict[p] >> (p + 1)
        q = p + 1
        while mask:
            if mask & 1:
                edges.append((p, q))
            mask >>= 1
            q += 1
    return Graph(labels, edges)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _maximal_masks(ts: TotalStructure) -> Iterator[int]:
    conflict, full = ts.conflict, ts.full
    compat = [full & ~conflict[p] & ~(1 << p) for p in range(ts.size)]

    def bk(r: int, p: int, x: int):
        if not p and not x:
            yield r
            return
        pivot = max(_bits(p | x), key=lambda u: (p & compat[u]).bit_count())
        for v in _bits(p & ~compat[pivot]):
            yield from bk(r | (1 << v), p & compat[v], x & compat[v])
            p &= ~(1 << v)
            x |= 1 << v

    yield from bk(0, full, 0)


def enumerate_maximal_tis(g: Graph, budget: int | None = None) -> Iterator[frozenset[TotalElement]]:
    """Every maximal total independent set exactly once (Bron-Kerbosch with pivoting)."""
    budget = DEFAULT_ENUMERATION_BUDGET if budget is None else budget
    ts = total_structure(g)
    if ts.size > budget:
        raise BudgetExceeded(
            f"total graph has {ts.size} vertices, over the enumeration budget of {budget}"
        )
    for mask in _maximal_masks(ts):
        yield ts.unmask(mask)


def extend_to_maximal(g: Graph, s: Iterable[TotalElement]) -> frozenset[TotalElement]:
    """Greedily add elements (in position order) until ``s`` is maximal."""
    ts = total_structure(g)
    mask = ts.mask(s)
    blocked = mask
    for q in _bits(mask):
        blocked |= ts.conflict[q]
    for p in range(ts.size):
        if not blocked >> p & 1:
            mask |= 1 << p
            blocked |= ts.conflict[p] | (1 << p)
    return ts.unmask(mask)


def max_weight_tis(
    g: Graph, weight: Mapping[TotalElement, Fraction]
) -> tuple[frozenset[TotalElement], Fraction]:
    """A maximal total independent set of maximum total weight.

    Exact branch and bound; the bound at each node partitions the remaining
    candidates greedily into cliques of the total graph and sums the largest
    weight of each clique.
    """
    ts = total_structure(g)
    w = [Fraction(weight.get(el, 0)) for el in ts.elements]
    if any(x < 0 for x in w):
        raise ValueError("weights must be nonnegative")
    scale = lcm(*(x.denominator for x in w)) if w else 1
    iw = [int(x * scale) for x in w]
    order = sorted((p for p in range(ts.size) if iw[p] > 0), key=lambda p: (-iw[p], p))
    conflict = ts.conflict
    best = [0, 0]

    def bound(cand: list[int]) -> int:
        cliques: list[tuple[int, int]] = []  # (members mask, top weight)
        total = 0
        for p in cand:
            for i, (members, top) in enumerate(cliques):
                if members & ~conflict[p] == 0:
                    cliques[i] = (members | (1 << p), top)
                    break
            else:
                cliques.append((1 << p, iw[p]))
                total += iw[p]
        return total

    def search(cand: list[int], value: int, chosen: int):
        if not cand:
            if value > best[0]:
                best[0], best[1] = value, chosen
            return
        if value + bound(cand) <= best[0]:
            return
        p = cand[0]
        rest = cand[1:]
        search([q for q in rest if not conflict[p] >> q & 1], value + iw[p], chosen | (1 << p))
        search(rest, value, chosen)

    search(order, 0, 0)
    chosen = extend_to_maximal(g, ts.unmask(best[1]))
    value = sum((w[ts.position[el]] for el in chosen), Fraction(0))
    return chosen, value


def clique_lower_bound(g: Graph) -> int:
    """Size of the clique formed by a max-degree vertex and its edges."""
    return max((g.degree(v) for v in range(g.n)), default=0) + 1 if g.n else 0
