"""Simple undirected graphs and the structural predicates used by the
construction: girth, cyclic edge-cuts, H-paths, connectors, neighborhoods.

Vertices and edges carry dense integer ids assigned at construction time.
Every vertex also has a string label; labels are what file formats and
derived graphs (induced subgraphs, contractions) use to refer back to the
original input.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

INFINITY = math.inf


class GraphError(ValueError):
    pass


class Graph:
    """An immutable simple graph.

    ``labels[i]`` is the label of vertex ``i``; ``edges[j] = (u, v)`` with
    ``u < v`` are the endpoints of edge ``j``.
    """

    __slots__ = ("labels", "edges", "adj", "incident", "_vertex", "_edge")

    def __init__(self, labels: Sequence, edges: Iterable[tuple[int, int]]):
        self.labels = tuple(str(x) for x in labels)
        self._vertex = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._vertex) != len(self.labels):
            raise GraphError("duplicate vertex labels")
        n = len(self.labels)
        norm = []
        self._edge = {}
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has an undeclared endpoint")
            if u == v:
                raise GraphError(f"loop at vertex {self.labels[u]!r}")
            key = (u, v) if u < v else (v, u)
            if key in self._edge:
                raise GraphError(
                    f"parallel edge {self.labels[key[0]]!r}-{self.labels[key[1]]!r}"
                )
            self._edge[key] = len(norm)
            norm.append(key)
        self.edges = tuple(norm)
        adj = [[] for _ in range(n)]
        inc = [[] for _ in range(n)]
        for e, (u, v) in enumerate(self.edges):
            adj[u].append(v)
            adj[v].append(u)
            inc[u].append(e)
            inc[v].append(e)
        self.adj = tuple(tuple(a) for a in adj)
        self.incident = tuple(tuple(a) for a in inc)

    @classmethod
    def from_edges(cls, pairs: Iterable[tuple], vertices: Iterable = ()) -> Graph:
        """Build a graph from label pairs; ids follow first appearance."""
        labels: dict[str, int] = {}

        def vid(x) -> int:
            x = str(x)
            if x not in labels:
                labels[x] = len(labels)
            return labels[x]

        for x in vertices:
            vid(x)
        edges = [(vid(a), vid(b)) for a, b in pairs]
        return cls(list(labels), edges)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def vertex(self, label) -> int:
        try:
            return self._vertex[str(label)]
        except KeyError:
            raise GraphError(f"unknown vertex {label!r}") from None

    def has_vertex(self, label) -> bool:
        return str(label) in self._vertex

    def edge_id(self, u: int, v: int) -> int | None:
        return self._edge.get((u, v) if u < v else (v, u))

    def edge_between(self, a, b) -> int | None:
        """Edge id joining the vertices labelled ``a`` and ``b``, if any."""
        if not (self.has_vertex(a) and self.has_vertex(b)):
            return None
        return self.edge_id(self.vertex(a), self.vertex(b))

    def edge_labels(self, e: int) -> tuple[str, str]:
        u, v = self.edges[e]
        return self.labels[u], self.labels[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def other_end(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def label_pairs(self) -> list[tuple[str, str]]:
        return [self.edge_labels(e) for e in range(self.m)]


@dataclass(frozen=True)
class Subgraph:
    """A subgraph of ``host`` given by vertex and edge id sets."""

    host: Graph
    vertices: frozenset[int]
    edges: frozenset[int]

    def __post_init__(self):
        for e in self.edges:
            u, v = self.host.edges[e]
            if u not in self.vertices or v not in self.vertices:
                raise GraphError("subgraph edge incident to a vertex outside the subgraph")
        if any(not 0 <= v < self.host.n for v in self.vertices):
            raise GraphError("subgraph vertex not in host")

    @classmethod
    def from_edges(cls, host: Graph, edges: Iterable[int], vertices: Iterable[int] = ()) -> Subgraph:
        edges = frozenset(edges)
        verts = set(vertices)
        for e in edges:
            verts.update(host.edges[e])
        return cls(host, frozenset(verts), edges)

    @classmethod
    def induced(cls, host: Graph, vertices: Iterable[int]) -> Subgraph:
        verts = frozenset(vertices)
        edges = frozenset(
            e for e, (u, v) in enumerate(host.edges) if u in verts and v in verts
        )
        return cls(host, verts, edges)

    @classmethod
    def whole(cls, host: Graph) -> Subgraph:
        return cls(host, frozenset(range(host.n)), frozenset(range(host.m)))

    def union(self, other: Subgraph) -> Subgraph:
        return Subgraph(self.host, self.vertices | other.vertices, self.edges | other.edges)

    def to_graph(self) -> Graph:
        """A standalone graph with the host labels, in host id order."""
        order = sorted(self.vertices)
        index = {v: i for i, v in enumerate(order)}
        edges = [
            (index[u], index[v]) for u, v in (self.host.edges[e] for e in sorted(self.edges))
        ]
        return Graph([self.host.labels[v] for v in order], edges)


@dataclass(frozen=True)
class EdgeCut:
    """An edge-cut ``edges`` whose removal leaves exactly ``side_a`` and ``side_b``."""

    edges: frozenset[int]
    side_a: frozenset[int]
    side_b: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.edges)


def max_degree(g: Graph) -> int:
    return max((g.degree(v) for v in range(g.n)), default=0)


def components(g: Graph, removed: Iterable[int] = (), vertices: Iterable[int] | None = None) -> list[list[int]]:
    """Connected components of ``g`` minus the ``removed`` edge ids,
    optionally restricted to a vertex subset."""
    removed = set(removed)
    allowed = set(range(g.n)) if vertices is None else set(vertices)
    seen = set()
    comps = []
    for s in sorted(allowed):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in g.incident[u]:
                if e in removed:
                    continue
                w = g.other_end(e, u)
                if w in allowed and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def girth(g: Graph) -> int | float:
    """Length of a shortest cycle; ``INFINITY`` for forests."""
    best = INFINITY
    for root in range(g.n):
        dist = {root: 0}
        parent_edge = {root: None}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for e in g.incident[u]:
                if e == parent_edge[u]:
                    continue
                w = g.other_end(e, u)
                if w in dist:
                    best = min(best, dist[u] + dist[w] + 1)
                else:
                    dist[w] = dist[u] + 1
                    parent_edge[w] = e
                    queue.append(w)
    return best


def _has_cycle(g: Graph, vertices: Iterable[int], removed: set[int] = frozenset()) -> bool:
    """Whether the subgraph induced on ``vertices`` (minus ``removed``) has a cycle."""
    verts = set(vertices)
    edges = {
        e for v in verts for e in g.incident[v]
        if e not in removed and g.other_end(e, v) in verts
    }
    comps = components(g, removed=removed, vertices=verts)
    return len(edges) > len(verts) - len(comps)


def _classify_cut(g: Graph, cut: Iterable[int]) -> EdgeCut | None:
    """An EdgeCut if ``cut`` is a minimal cyclic edge-cut of connected ``g``."""
    cut = set(cut)
    comps = components(g, removed=cut)
    if len(comps) != 2:
        return None
    a, b = set(comps[0]), set(comps[1])
    for e in cut:
        u, v = g.edges[e]
        if (u in a) == (v in a):
            return None
    if not (_has_cycle(g, a, cut) and _has_cycle(g, b, cut)):
        return None
    return EdgeCut(frozenset(cut), frozenset(a), frozenset(b))


def _candidate_cuts(g: Graph, max_size: int, cap: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Edge subsets of size 1..max_size (by size, then lexicographic) in which
    no vertex has more than ``cap[v]`` of its edges."""
    used = [0] * g.n

    def rec(start: int, chosen: list[int], size: int):
        if len(chosen) == size:
            yield tuple(chosen)
            return
        for e in range(start, g.m - (size - len(chosen)) + 1):
            u, v = g.edges[e]
            if used[u] >= cap[u] or used[v] >= cap[v]:
                continue
            used[u] += 1
            used[v] += 1
            chosen.append(e)
            yield from rec(e + 1, chosen, size)
            chosen.pop()
            used[u] -= 1
            used[v] -= 1

    for size in range(1, max_size + 1):
        yield from rec(0, [], size)


def minimal_cyclic_cuts(g: Graph, max_size: int) -> list[EdgeCut]:
    """Every minimal cyclic edge-cut of connected ``g`` with at most ``max_size`` edges.

    Exhaustive; a vertex whose edges all lie in the cut would be an acyclic
    component, so such subsets are pruned.
    """
    if not is_connected(g):
        raise GraphError("graph is not connected")
    cap = [max(g.degree(v) - 1, 0) for v in range(g.n)]
    found = []
    for subset in _candidate_cuts(g, min(max_size, g.m), cap):
        cut = _classify_cut(g, subset)
        if cut is not None:
            found.append(cut)
    return found


def _constructive_upper_bound(g: Graph) -> EdgeCut | None:
    """A cyclic cut built from a short cycle C and a cyclic component of G - V(C)."""
    best = None
    seen_cycles = set()
    for e0, (s, t) in enumerate(g.edges):
        # shortest s-t path avoiding e0 closes a shortest cycle through e0
        prev = {s: None}
        queue = deque([s])
        while queue and t not in prev:
            u = queue.popleft()
            for e in g.incident[u]:
                if e == e0:
                    continue
                w = g.other_end(e, u)
                if w not in prev:
                    prev[w] = u
                    queue.append(w)
        if t not in prev:
            continue
        cyc = []
        x = t
        while x is not None:
            cyc.append(x)
            x = prev[x]
        key = frozenset(cyc)
        if key in seen_cycles:
            continue
        seen_cycles.add(key)
        rest = [v for v in range(g.n) if v not in key]
        for comp in components(g, vertices=rest):
            if not _has_cycle(g, comp):
                continue
            side = set(comp)
            cut = [e for e, (u, v) in enumerate(g.edges) if (u in side) != (v in side)]
            found = _classify_cut(g, cut)
            if found is not None and (best is None or found.size < best.size):
                best = found
    return best


def cyclic_edge_connectivity(g: Graph, max_size: int | None = None) -> tuple[int | float | None, EdgeCut | None]:
    """Minimum size of a cyclic edge-cut of connected ``g`` and a witness.

    Returns ``(INFINITY, None)`` when no cyclic edge-cut exists.  With
    ``max_size`` the search stops there; if the minimum is larger the result
    is ``(None, None)``, meaning only that no cut of size ``<= max_size`` exists.
    """
    if not is_connected(g):
        raise GraphError("graph is not connected")
    upper = _constructive_upper_bound(g)
    limit = g.m if upper is None else upper.size - 1
    truncated = False
    if max_size is not None and max_size < limit:
        limit, truncated = max_size, True
    # In a minimum cyclic cut a vertex with >= 2 cut edges and one edge on its
    # own side could switch sides and shrink the cut, so those are pruned.
    cap = []
    for v in range(g.n):
        deg = g.degree(v)
        cap.append(1 if deg in (2, 3) else max(deg - 2, 0))
    for subset in _candidate_cuts(g, limit, cap):
        cut = _classify_cut(g, subset)
        if cut is not None:
            return cut.size, cut
    if upper is not None and (max_size is None or upper.size <= max_size):
        return upper.size, upper
    if truncated:
        return None, None
    return INFINITY, None


def is_cyclically_k_connected(g: Graph, k: int) -> bool:
    """More than ``k`` edges and no cyclic edge-cut with fewer than ``k`` edges."""
    if g.m <= k:
        return False
    if k <= 1:
        return True
    size, _ = cyclic_edge_connectivity(g, max_size=k - 1)
    return size is None or size >= k


def _short_h_path(g: Graph, hv: set[int], he: set[int], d: int, order: Sequence[int]) -> list[int] | None:
    """An H-path of length <= d as a vertex list, or None."""
    for s in order:
        prev = {s: None}
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if dist[u] >= d:
                continue
            for e in g.incident[u]:
                if e in he:
                    continue
                w = g.other_end(e, u)
                if w in prev:
                    continue
                prev[w] = u
                dist[w] = dist[u] + 1
                if w in hv:
                    path = [w]
                    x = u
                    while x is not None:
                        path.append(x)
                        x = prev[x]
                    return path
                queue.append(w)
    return None


def find_h_path(g: Graph, h: Subgraph, d: int) -> list[int] | None:
    """Some H-path of length at most ``d`` (as a vertex sequence), if one exists."""
    return _short_h_path(g, set(h.vertices), set(h.edges), d, sorted(h.vertices))


def is_d_closed(g: Graph, h: Subgraph, d: int) -> bool:
    return find_h_path(g, h, d) is None


def d_connector(g: Graph, h: Subgraph, d: int, rng: random.Random | None = None) -> Subgraph:
    """Smallest d-closed subgraph of ``g`` containing ``h``.

    Short H-paths are adjoined one at a time until none is left.  ``rng``
    randomizes the search order; the fixpoint does not depend on it.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    hv, he = set(h.vertices), set(h.edges)
    while True:
        order = sorted(hv)
        if rng is not None:
            rng.shuffle(order)
        path = _short_h_path(g, hv, he, d, order)
        if path is None:
            return Subgraph(g, frozenset(hv), frozenset(he))
        hv.update(path)
        for a, b in zip(path, path[1:]):
            he.add(g.edge_id(a, b))


def neighborhood(g: Graph, h: Subgraph) -> Subgraph:
    """The subgraph spanned by all edges with at least one end in ``h``."""
    edges = {e for v in h.vertices for e in g.incident[v]}
    return Subgraph.from_edges(g, edges, h.vertices)


def is_forest(h: Subgraph) -> bool:
    parent = {v: v for v in h.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in h.edges:
        u, v = h.host.edges[e]
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def _fresh_label(g: Graph, stem: str) -> str:
    label = stem
    while g.has_vertex(label):
        label = "_" + label
    return label


def contract_and_subdivide(g: Graph, a: Iterable[int], t: int) -> tuple[Graph, str]:
    """Contract the vertex set ``a`` to a new vertex ``w`` and subdivide each
    former cut edge ``t`` times.

    Returns the new graph and the label of ``w``.  Vertices outside ``a``
    keep their labels (and relative order).
    """
    a = set(a)
    if t < 0:
        raise ValueError("t must be nonnegative")
    b = [v for v in range(g.n) if v not in a]
    if not a or not b:
        raise GraphError("both sides must be nonempty")
    if len(components(g, vertices=a)) != 1 or len(components(g, vertices=b)) != 1:
        raise GraphError("both sides of the cut must induce connected subgraphs")
    w_label = _fresh_label(g, "w*")
    labels = [g.labels[v] for v in b] + [w_label]
    index = {v: i for i, v in enumerate(b)}
    w = len(b)
    edges = []
    cut_edges = []
    for e, (u, v) in enumerate(g.edges):
        if u in index and v in index:
            edges.append((index[u], index[v]))
        elif (u in index) != (v in index):
            cut_edges.append((e, index[u] if u in index else index[v]))
    if t == 0 and len({y for _, y in cut_edges}) != len(cut_edges):
        raise GraphError("contraction without subdivision would create parallel edges")
    taken = set(labels)
    for e, y in cut_edges:
        prev = w
        for i in range(t):
            lab = f"s{e}.{i}*"
            while lab in taken:
                lab = "_" + lab
            taken.add(lab)
            labels.append(lab)
            edges.append((prev, len(labels) - 1))
            prev = len(labels) - 1
        edges.append((prev, y))
    return Graph(labels, edges), w_label


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


def bfs_distances(g: Graph, source: int, allowed: set[int] | None = None) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in dist and (allowed is None or w in allowed):
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def edge_subsets(g: Graph, size: int) -> Iterator[tuple[int, ...]]:
    return combinations(range(g.m), size)
