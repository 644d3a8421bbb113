"""Recoloring a tree so that its root and root edge get prescribed color sets.

Given a fractional coloring ``c_0`` of a tree with colors in ``[0, L')`` and
two disjoint measure-1 sets ``X, Y ⊆ [0, L)`` with ``L = L' + δ``, the tree is
recolored level by level with a cascade of interval isometries so that
``c(r) = X``, ``c(rr') = Y`` and the deepest elements keep their colors.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .coloring import IntervalColoring, verify_interval_coloring
from .graph import Graph, bfs_distances, is_tree
from .intervals import (
    IntervalSet,
    PiecewiseIsometry,
    as_rational,
    build_level_partition,
    extend_swap,
    matching_isometry,
)
from .total import E, TotalElement, V


class RecolorError(ValueError):
    pass


def tree_depth_parameters(delta: int, eps_prime, eps) -> tuple[Fraction, int, int]:
    """Return ``(δ, s, d)`` with δ = ε-ε', s = ⌈(Δ+1+ε')/δ⌉ and d = 2s+1."""
    eps_prime, eps = as_rational(eps_prime), as_rational(eps)
    if not 0 <= eps_prime < eps:
        raise RecolorError("need 0 <= eps' < eps")
    gap = eps - eps_prime
    s = math.ceil((delta + 1 + eps_prime) / gap)
    return gap, s, 2 * s + 1


@dataclass
class RecolorTask:
    tree: Graph
    root: int
    c0: IntervalColoring
    X: IntervalSet
    Y: IntervalSet
    delta: int
    eps_prime: Fraction
    eps: Fraction

    def __post_init__(self):
        self.eps_prime = as_rational(self.eps_prime)
        self.eps = as_rational(self.eps)

    @property
    def low_ambient(self) -> Fraction:
        return self.delta + 1 + self.eps_prime

    @property
    def ambient(self) -> Fraction:
        return self.delta + 1 + self.eps


@dataclass
class RecolorResult:
    coloring: IntervalColoring
    pi: PiecewiseIsometry
    cascade: list[PiecewiseIsometry]
    levels: dict[TotalElement, int]
    partition: list[IntervalSet]
    s: int
    d: int
    checks: dict[str, bool] = field(default_factory=dict)


def element_levels(tree: Graph, root: int, d: int) -> dict[TotalElement, int]:
    """Vertex level ``d - dist(r, v)``; an edge takes the smaller endpoint level."""
    dist = bfs_distances(tree, root)
    levels = {V(v): d - k for v, k in dist.items()}
    for e, (u, v) in enumerate(tree.edges):
        levels[E(e)] = min(levels[V(u)], levels[V(v)])
    return levels


def _check_task(task: RecolorTask) -> tuple[Fraction, int, int]:
    t = task.tree
    if not is_tree(t):
        raise RecolorError("input is not a tree")
    if t.degree(task.root) != 1:
        raise RecolorError("root must be a leaf")
    gap, s, d = tree_depth_parameters(task.delta, task.eps_prime, task.eps)
    depth = max(bfs_distances(t, task.root).values())
    if depth > d:
        raise RecolorError(f"tree depth {depth} exceeds d = {d}")
    L = task.ambient
    ambient = IntervalSet.span(0, L)
    for name, s_ in (("X", task.X), ("Y", task.Y)):
        if s_.measure() != 1:
            raise RecolorError(f"{name} has measure {s_.measure()}, not 1")
        if not s_.issubset(ambient):
            raise RecolorError(f"{name} is not inside [0, {L})")
    if not task.X.isdisjoint(task.Y):
        raise RecolorError("X and Y intersect")
    low = IntervalColoring(t, task.low_ambient, task.c0.colors)
    bad = verify_interval_coloring(t, low)
    if bad:
        raise RecolorError(f"base coloring is invalid at ambient {task.low_ambient}: {bad[0]}")
    return gap, s, d


def _complement_map(L, taken_src: IntervalSet, taken_dst: IntervalSet) -> PiecewiseIsometry:
    ambient = IntervalSet.span(0, L)
    return matching_isometry(ambient - taken_src, ambient - taken_dst, True, L)


def recolor_tree(task: RecolorTask) -> RecolorResult:
    gap, s, d = _check_task(task)
    t, r = task.tree, task.root
    L = task.ambient
    root_edge = E(t.incident[r][0])
    # smaller color sets stay valid and make pi(c0(rr')) = Y exact
    a_r = task.c0[V(r)].prefix(1)
    a_e = task.c0[root_edge].prefix(1)
    pi = (
        matching_isometry(a_r, task.X, True, L)
        .merge(matching_isometry(a_e, task.Y, True, L))
        .merge(_complement_map(L, a_r | a_e, task.X | task.Y))
    )
    parts = build_level_partition(task.low_ambient, L, gap)
    I0 = parts[0]
    K = [None] + [pi.apply(parts[k]) for k in range(1, s + 1)]

    cascade = [PiecewiseIsometry.identity(L)]
    for k in range(s):
        cur = cascade[-1]
        J = cur.apply(I0)
        target = K[k + 1]
        short = gap - target.measure()
        if short:
            # last block is shorter: the leftover of J stays put
            target = target | (J - target).suffix(short)
        odd = extend_swap(cur, matching_isometry(J, target, True, L))
        nxt_block = parts[k + 1]
        J_next = odd.apply(nxt_block)
        sigma = pi.compose(odd.inverse()).restrict(J_next)
        even = extend_swap(odd, sigma)
        cascade += [odd, even]
        for i in range(1, k + 2):
            if not even.agrees_with(pi, parts[i]):
                raise AssertionError(f"cascade step {2 * k + 2} disagrees with pi on block {i}")

    levels = element_levels(t, r, d)
    colors = {}
    for el, lev in levels.items():
        if el == V(r):
            colors[el] = task.X
        elif el == root_edge:
            colors[el] = cascade[lev].apply(a_e)
        else:
            colors[el] = cascade[lev].apply(task.c0[el])
    out = IntervalColoring(t, L, colors)
    result = RecolorResult(out, pi, cascade, levels, parts, s, d)
    result.checks = check_recolor(task, result)
    return result


def check_recolor(task: RecolorTask, result: RecolorResult) -> dict[str, bool]:
    c = result.coloring
    r = task.root
    root_edge = E(task.tree.incident[r][0])
    final = result.cascade[-1]
    low = IntervalSet.span(0, task.low_ambient)
    return {
        "valid": not verify_interval_coloring(task.tree, c),
        "root": c[V(r)] == task.X,
        "root_edge": c[root_edge] == task.Y,
        "level0": all(
            c[el] == task.c0[el] for el, lev in result.levels.items() if lev == 0
        ),
        "final_agrees": final.agrees_with(result.pi, low),
    }


# Random instances ----------------------------------------------------------


def random_isometry(length, rng: random.Random, cuts: int = 6, grid: int = 64) -> PiecewiseIsometry:
    """Cut ``[0, length)`` at random rational points and permute the pieces."""
    length = as_rational(length)
    pts = sorted({Fraction(rng.randint(1, grid * int(math.ceil(length)) - 1), grid) for _ in range(cuts)})
    pts = [p for p in pts if 0 < p < length]
    bounds = [Fraction(0)] + pts + [length]
    blocks = list(zip(bounds, bounds[1:]))
    order = blocks[:]
    rng.shuffle(order)
    pieces, pos = [], Fraction(0)
    for a, b in order:
        pieces.append((a, b, pos - a))
        pos += b - a
    return PiecewiseIsometry(length, pieces)


def greedy_tree_coloring(tree: Graph, root: int, ambient) -> IntervalColoring:
    """A (Δ+1)-total coloring of a tree with unit intervals ``[j, j+1)``."""
    colors = max(tree.degree(v) for v in range(tree.n)) + 1 if tree.m else 1
    if tree.m == 1:
        colors = 3
    col = {V(root): 0}
    dist = bfs_distances(tree, root)
    for v in sorted(dist, key=lambda x: (dist[x], x)):
        used_edges = {col[E(e)] for e in tree.incident[v] if E(e) in col}
        for e in tree.incident[v]:
            if E(e) in col:
                continue
            w = tree.other_end(e, v)
            ce = next(j for j in range(colors) if j != col[V(v)] and j not in used_edges)
            col[E(e)] = ce
            used_edges.add(ce)
            col[V(w)] = next(j for j in range(colors) if j not in (col[V(v)], ce))
    if colors > as_rational(ambient):
        raise RecolorError("ambient too small for a greedy tree coloring")
    return IntervalColoring(
        tree, as_rational(ambient), {el: IntervalSet.span(j, j + 1) for el, j in col.items()}
    )


def random_tree(rng: random.Random, depth: int, max_degree: int, branch_prob: float = 0.3, max_vertices: int = 400) -> tuple[Graph, int]:
    """A tree with a leaf root, a spine of length ``depth`` and random side branches
    that never go deeper than the spine."""
    edges = []
    dist = {0: 0}
    deg = {0: 0}
    nxt = 1
    prev = 0
    for k in range(1, depth + 1):
        edges.append((prev, nxt))
        deg[prev] += 1
        deg[nxt] = 1
        dist[nxt] = k
        prev = nxt
        nxt += 1
    frontier = [v for v in range(1, depth)]
    while frontier and nxt < max_vertices:
        v = frontier.pop(rng.randrange(len(frontier)))
        while deg[v] < max_degree and dist[v] < depth and rng.random() < branch_prob and nxt < max_vertices:
            edges.append((v, nxt))
            deg[v] += 1
            deg[nxt] = 1
            dist[nxt] = dist[v] + 1
            frontier.append(nxt)
            nxt += 1
    g = Graph([str(i) for i in range(nxt)], edges)
    return g, 0


def random_task(rng: random.Random, delta: int, eps_prime, eps, depth: int | None = None) -> RecolorTask:
    """Random tree of the right depth, permuted greedy base coloring, random X and Y."""
    eps_prime, eps = as_rational(eps_prime), as_rational(eps)
    _, _, d = tree_depth_parameters(delta, eps_prime, eps)
    tree, root = random_tree(rng, d if depth is None else depth, delta)
    low = delta + 1 + eps_prime
    base = greedy_tree_coloring(tree, root, low)
    rho = random_isometry(low, rng)
    c0 = IntervalColoring(tree, low, {el: rho.apply(s) for el, s in base.colors.items()})
    L = delta + 1 + eps
    sigma = random_isometry(L, rng)
    X = sigma.apply(IntervalSet.span(0, 1))
    Y = sigma.apply(IntervalSet.span(1, 2))
    return RecolorTask(tree, root, c0, X, Y, delta, eps_prime, eps)
