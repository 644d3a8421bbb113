"""Shared test utilities: networkx conversion and brute-force oracles."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import networkx as nx

from fractotal.graph import Graph


def from_nx(h: nx.Graph) -> Graph:
    return Graph.from_edges(
        [(str(a), str(b)) for a, b in h.edges()], [str(v) for v in h.nodes()]
    )


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def brute_total_independent_sets(g: Graph) -> list[frozenset]:
    """All total independent sets by subset enumeration."""
    from fractotal.total import adjacent, elements

    els = elements(g)
    out = []
    for r in range(len(els) + 1):
        for combo in combinations(els, r):
            if all(not adjacent(g, x, y) for x, y in combinations(combo, 2)):
                out.append(frozenset(combo))
    return out


def brute_maximal_tis(g: Graph) -> set[frozenset]:
    sets = brute_total_independent_sets(g)
    return {s for s in sets if not any(s < t for t in sets)}


def brute_cyclic_cuts(g: Graph, max_size: int) -> list[frozenset[int]]:
    """Edge sets whose removal leaves >= 2 components, each containing a cycle,
    and which are inclusion-minimal with that property."""
    h = to_nx(g)
    cyclic = []
    for r in range(1, max_size + 1):
        for cut in combinations(range(g.m), r):
            k = h.copy()
            k.remove_edges_from(g.edges[e] for e in cut)
            comps = list(nx.connected_components(k))
            if len(comps) < 2:
                continue
            if all(k.subgraph(c).number_of_edges() >= len(c) for c in comps):
                cyclic.append(frozenset(cut))
    return [c for c in cyclic if not any(d < c for d in cyclic)]


def fq(x) -> Fraction:
    return Fraction(x)
