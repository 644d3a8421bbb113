"""Edge colorings and ℓ-decompositions into sub-2-factors."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, bfs_distances, max_degree

DEFAULT_NODE_BUDGET = 10**7


class SearchBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Decomposition:
    """Edge-id parts of a ⌈ℓ/2⌉-part decomposition; ``matching`` indexes the
    designated matching when ℓ is odd."""

    graph: Graph
    ell: int
    parts: tuple[frozenset[int], ...]
    matching: int | None = None

    def factors(self) -> list[frozenset[int]]:
        """The sub-2-factor parts, i.e. all parts except the matching."""
        return [p for i, p in enumerate(self.parts) if i != self.matching]


def edge_color(g: Graph) -> list[set[int]]:
    """Proper edge coloring with at most Δ+1 classes (Misra-Gries)."""
    delta = max_degree(g)
    ncolors = delta + 1
    color: dict[int, int] = {}
    at = [dict() for _ in range(g.n)]  # vertex -> {color: edge}

    def free(v: int) -> int:
        return next(c for c in range(ncolors) if c not in at[v])

    def is_free(v: int, c: int) -> bool:
        return c not in at[v]

    def set_color(e: int, c: int) -> None:
        u, v = g.edges[e]
        color[e] = c
        at[u][c] = e
        at[v][c] = e

    def clear(e: int) -> None:
        c = color.pop(e)
        u, v = g.edges[e]
        del at[u][c]
        del at[v][c]

    for e0 in range(g.m):
        u, v = g.edges[e0]
        fan = [v]
        in_fan = {v}
        grown = True
        while grown:
            grown = False
            last = fan[-1]
            for e in g.incident[u]:
                x = g.other_end(e, u)
                if x not in in_fan and e in color and is_free(last, color[e]):
                    fan.append(x)
                    in_fan.add(x)
                    grown = True
                    break
        c = free(u)
        d = free(fan[-1])
        if c != d:
            # invert the cd-path starting at u
            path = []
            x, want = u, d
            while want in at[x]:
                e = at[x][want]
                path.append(e)
                x = g.other_end(e, x)
                want = c if want == d else d
            old = [color[e] for e in path]
            for e in path:
                clear(e)
            for e, k in zip(path, old):
                set_color(e, c if k == d else d)
        w = None
        for i, f in enumerate(fan):
            if not is_free(f, d):
                continue
            ok = all(
                is_free(fan[j], color[g.edge_id(u, fan[j + 1])]) for j in range(i)
            )
            if ok:
                w = i
                break
        if w is None:  # pragma: no cover - impossible for a correct fan
            raise AssertionError("Misra-Gries rotation failed")
        for j in range(w):
            e_next = g.edge_id(u, fan[j + 1])
            k = color[e_next]
            clear(e_next)
            set_color(g.edge_id(u, fan[j]), k)
        set_color(g.edge_id(u, fan[w]), d)

    # try to empty the extra class with Kempe swaps; always succeeds on bipartite graphs
    for e in sorted(x for x, k in color.items() if k == delta):
        clear(e)
        u, v = g.edges[e]
        fu = [k for k in range(delta) if is_free(u, k)]
        fv = [k for k in range(delta) if is_free(v, k)]
        common = [k for k in fu if k in fv]
        if common:
            set_color(e, common[0])
            continue
        done = False
        for a in fu:
            for b in fv:
                path, x, want = [], v, a
                while want in at[x]:
                    f = at[x][want]
                    path.append(f)
                    x = g.other_end(f, x)
                    want = b if want == a else a
                if x == u:
                    continue
                old = [color[f] for f in path]
                for f in path:
                    clear(f)
                for f, k in zip(path, old):
                    set_color(f, b if k == a else a)
                set_color(e, a)
                done = True
                break
            if done:
                break
        if not done:
            set_color(e, delta)
    classes = [set() for _ in range(ncolors)]
    for e, c in color.items():
        classes[c].add(e)
    return [cl for cl in classes if cl]


def _part_count(ell: int) -> int:
    return (ell + 1) // 2


def _fast_path(g: Graph, ell: int) -> Decomposition | None:
    classes = sorted(edge_color(g), key=len)
    if len(classes) > ell:
        return None
    classes = [set()] * (ell - len(classes)) + classes  # empty classes are the smallest
    parts = []
    matching = None
    if ell % 2:
        matching = 0
        parts.append(frozenset(classes[0]))
        classes = classes[1:]
    for i in range(0, len(classes), 2):
        parts.append(frozenset(classes[i] | classes[i + 1]))
    return Decomposition(g, ell, tuple(parts), matching)


def _edge_order(g: Graph) -> list[int]:
    """Edges in BFS order so that each vertex's edges are assigned close together."""
    seen_v = set()
    order = []
    seen_e = set()
    for root in range(g.n):
        if root in seen_v:
            continue
        dist = bfs_distances(g, root)
        seen_v.update(dist)
        for v in sorted(dist, key=lambda x: (dist[x], x)):
            for e in g.incident[v]:
                if e not in seen_e:
                    seen_e.add(e)
                    order.append(e)
    return order


def _backtrack(g: Graph, ell: int, budget: int) -> Decomposition | None:
    nparts = _part_count(ell)
    matching = 0 if ell % 2 else None
    cap = [1 if i == matching else 2 for i in range(nparts)]
    load = [[0] * nparts for _ in range(g.n)]
    left = [g.degree(v) for v in range(g.n)]
    used = [0] * nparts
    assign = [-1] * g.m
    order = _edge_order(g)
    nodes = [0]

    def rec(k: int) -> bool:
        nodes[0] += 1
        if nodes[0] > budget:
            raise SearchBudgetExceeded(f"more than {budget} search nodes")
        if k == len(order):
            return True
        e = order[k]
        u, v = g.edges[e]
        opened = False  # interchangeable empty 2-parts: only try the first
        for p in range(nparts):
            if load[u][p] >= cap[p] or load[v][p] >= cap[p]:
                continue
            if p != matching and not used[p]:
                if opened:
                    continue
                opened = True
            assign[e] = p
            used[p] += 1
            for x in (u, v):
                load[x][p] += 1
                left[x] -= 1
            # every vertex still needs room for its unassigned edges
            good = all(
                sum(cap[q] - load[x][q] for q in range(nparts)) >= left[x] for x in (u, v)
            )
            if good and rec(k + 1):
                return True
            for x in (u, v):
                load[x][p] -= 1
                left[x] += 1
            assign[e] = -1
            used[p] -= 1
        return False

    if not rec(0):
        return None
    parts = tuple(frozenset(e for e in range(g.m) if assign[e] == p) for p in range(nparts))
    return Decomposition(g, ell, parts, matching)


def ell_decomposition(
    g: Graph, ell: int, node_budget: int = DEFAULT_NODE_BUDGET
) -> Decomposition | None:
    """An ℓ-decomposition, or None when the complete search finds none.

    Raises :class:`SearchBudgetExceeded` when the backtracking search gives up,
    which is distinct from a definitive None.
    """
    if ell < 1:
        raise ValueError("ell must be positive")
    if max_degree(g) > ell:
        raise ValueError(f"maximum degree {max_degree(g)} exceeds ell = {ell}")
    d = _fast_path(g, ell)
    if d is None:
        d = _backtrack(g, ell, node_budget)
    if d is not None:
        problems = verify_decomposition(g, d, ell)
        if problems:  # pragma: no cover
            raise AssertionError(problems)
    return d


def verify_decomposition(g: Graph, d: Decomposition, ell: int) -> list[str]:
    problems = []
    if len(d.parts) != _part_count(ell):
        problems.append(f"expected {_part_count(ell)} parts, got {len(d.parts)}")
    owner: dict[int, int] = {}
    for i, part in enumerate(d.parts):
        for e in part:
            if not 0 <= e < g.m:
                problems.append(f"part {i}: unknown edge id {e}")
            elif e in owner:
                problems.append(f"edge {'-'.join(g.edge_labels(e))} in parts {owner[e]} and {i}")
            else:
                owner[e] = i
    for e in range(g.m):
        if e not in owner:
            problems.append(f"edge {'-'.join(g.edge_labels(e))} is in no part")
    if ell % 2:
        if d.matching is None or not 0 <= d.matching < len(d.parts):
            problems.append("odd ell needs a designated matching part")
    elif d.matching is not None:
        problems.append("even ell has no matching part")
    for i, part in enumerate(d.parts):
        limit = 1 if i == d.matching else 2
        deg: dict[int, int] = {}
        for e in part:
            if 0 <= e < g.m:
                for x in g.edges[e]:
                    deg[x] = deg.get(x, 0) + 1
        for x, k in sorted(deg.items()):
            if k > limit:
                kind = "matching" if limit == 1 else "sub-2-factor"
                problems.append(f"part {i} ({kind}) has degree {k} at {g.labels[x]}")
    return problems


def decomposition_to_json(d: Decomposition) -> dict:
    g = d.graph
    return {
        "ell": d.ell,
        "matching": d.matching,
        "parts": [[list(g.edge_labels(e)) for e in sorted(part)] for part in d.parts],
    }


def decomposition_from_json(g: Graph, data) -> Decomposition:
    parts = []
    for part in data["parts"]:
        ids = set()
        for a, b in part:
            e = g.edge_between(a, b)
            if e is None:
                raise KeyError(f"edge {a}-{b} not in graph")
            ids.add(e)
        parts.append(frozenset(ids))
    return Decomposition(g, int(data["ell"]), tuple(parts), data.get("matching"))
