"""The constructive pipeline: convex combination of factor colorings,
cyclic-cut split with tree recoloring, and the recursive orchestrator."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .coloring import (
    ColoringError,
    InfeasibleBounds,
    IntervalColoring,
    WeightedColoring,
    describe_violation,
    fractional_total_chromatic_number,
    interval_coloring_to_json,
    solve_weighted_coloring,
    verify_interval_coloring,
    weighted_to_fractional,
    weights_to_interval_assignment,
)
from .decompose import Decomposition, SearchBudgetExceeded, decomposition_to_json, ell_decomposition
from .graph import (
    EdgeCut,
    Graph,
    GraphError,
    Subgraph,
    bfs_distances,
    contract_and_subdivide,
    d_connector,
    girth,
    is_connected,
    is_cyclically_k_connected,
    is_tree,
    max_degree,
    minimal_cyclic_cuts,
)
from .intervals import as_rational
from .recolor import RecolorError, RecolorTask, recolor_tree, tree_depth_parameters
from .serialize import element_to_str, q2s
from .total import DEFAULT_ENUMERATION_BUDGET, BudgetExceeded, E, TotalElement, V, total_structure


class CompositionError(ValueError):
    pass


class SplitError(ValueError):
    pass


class GlueError(ValueError):
    pass


# Convex combination of factor colorings ------------------------------------


def factor_bounds(g: Graph, factor, delta: int, eps_prime) -> dict[TotalElement, Fraction]:
    """Coverage lower bounds a factor coloring must meet: 1/(Δ+ε') on vertices,
    (Δ-1)/(2(Δ+ε')) on the factor's edges, nothing elsewhere."""
    eps_prime = as_rational(eps_prime)
    bounds = {V(v): 1 / (delta + eps_prime) for v in range(g.n)}
    for e in factor:
        bounds[E(e)] = Fraction(delta - 1, 1) / (2 * (delta + eps_prime))
    return bounds


def composition_coefficients(k: int) -> tuple[Fraction, Fraction]:
    """Weights of the factor colorings and of the matching coloring."""
    return Fraction(2 * k + 1, 2 * k * (k + 1)), Fraction(1, 2 * k + 2)


def compose_factor_colorings(
    g: Graph,
    decomp: Decomposition,
    factor_colorings: list[WeightedColoring],
    epsilon,
) -> WeightedColoring:
    """Mix the factor colorings and the matching into a weighted
    1/(Δ+1+ε)-coloring and check every coverage inequality exactly."""
    epsilon = as_rational(epsilon)
    delta = max_degree(g)
    if epsilon <= 0:
        raise CompositionError("epsilon must be positive")
    if delta < 3 or delta % 2 == 0:
        raise CompositionError(f"maximum degree must be odd and at least 3, got {delta}")
    k = delta // 2
    if decomp.ell != delta or decomp.matching is None or len(decomp.parts) != k + 1:
        raise CompositionError("decomposition is not a Δ-decomposition with a matching")
    factors = decomp.factors()
    if len(factor_colorings) != k:
        raise CompositionError(f"need {k} factor colorings, got {len(factor_colorings)}")
    eps_prime = epsilon / 2
    for i, (f, w) in enumerate(zip(factors, factor_colorings), start=1):
        if w.graph is not g:
            raise CompositionError(f"factor coloring {i} lives on another graph")
        if w.total() != 1:
            raise CompositionError(f"factor coloring {i} has mass {w.total()}")
        cov = w.coverage_map()
        for el, b in factor_bounds(g, f, delta, eps_prime).items():
            if cov[el] < b:
                raise CompositionError(
                    f"factor coloring {i}: {element_to_str(g, el)} covered {cov[el]}, "
                    f"needs {b} (slack {cov[el] - b})"
                )
    a, b0 = composition_coefficients(k)
    matching = decomp.parts[decomp.matching]
    weights: dict = {}
    for w in factor_colorings:
        for s, x in w.weights.items():
            weights[s] = weights.get(s, Fraction(0)) + a * x
    m_set = frozenset(E(e) for e in matching)
    weights[m_set] = weights.get(m_set, Fraction(0)) + b0
    out = WeightedColoring(g, weights)

    if out.total() != 1:  # pragma: no cover - coefficients sum to 1
        raise CompositionError(f"composed mass {out.total()} != 1")
    target = 1 / (2 * k + 2 + epsilon)
    cov = out.coverage_map()
    for el, c in cov.items():
        if el.kind == "v" or el.index not in matching:
            if not c > target:
                raise CompositionError(
                    f"{element_to_str(g, el)} covered {c}, not above {target} (slack {c - target})"
                )
        elif c < b0:
            raise CompositionError(
                f"matching edge {element_to_str(g, el)} covered {c} < {b0} (slack {c - b0})"
            )
    return out


# Split plan ----------------------------------------------------------------


@dataclass
class SplitPlan:
    graph: Graph
    delta: int
    d: int
    d0: int
    cut: EdgeCut
    A: frozenset[int]
    B: frozenset[int]
    connector: Subgraph
    boundary: list[int]  # edge ids xy, x on the connector, y in B outside it
    trees: dict[int, tuple[Graph, int]]  # boundary edge -> (tree, root id in tree)
    tree_vertices: dict[int, frozenset[int]]  # boundary edge -> vertex ids of g
    G_A: Graph
    G_B: Graph
    w_label: str
    subdivisions: int

    def to_json(self) -> dict:
        g = self.graph
        lab = g.labels
        return {
            "delta": self.delta,
            "d": self.d,
            "d0": self.d0,
            "cut": sorted(list(g.edge_labels(e)) for e in self.cut.edges),
            "A": sorted(lab[v] for v in self.A),
            "B": sorted(lab[v] for v in self.B),
            "connector_edges": sorted(list(g.edge_labels(e)) for e in self.connector.edges),
            "boundary": sorted(list(g.edge_labels(e)) for e in self.boundary),
            "trees": {
                "-".join(g.edge_labels(e)): sorted(lab[v] for v in vs)
                for e, vs in sorted(self.tree_vertices.items())
            },
            "G_A": {"n": self.G_A.n, "m": self.G_A.m},
            "G_B": {"n": self.G_B.n, "m": self.G_B.m, "w": self.w_label},
            "subdivisions": self.subdivisions,
        }


def _side_key(side: frozenset[int]) -> tuple:
    return (len(side), tuple(sorted(side)))


def choose_cut(g: Graph, delta: int) -> EdgeCut | None:
    """Minimal cyclic cut with fewer than Δ edges whose smaller side is smallest.

    Ties go to the lexicographically smallest vertex set, then the cut edges.
    The returned cut has ``side_b`` as the small side.
    """
    best = None
    for cut in minimal_cyclic_cuts(g, delta - 1):
        a, b = cut.side_a, cut.side_b
        if _side_key(a) < _side_key(b):
            a, b = b, a
        key = (_side_key(b), tuple(sorted(cut.edges)))
        if best is None or key < best[0]:
            best = (key, EdgeCut(cut.edges, a, b))
    return None if best is None else best[1]


def plan_split(g: Graph, delta: int, d: int, cut: EdgeCut | None = None) -> SplitPlan | None:
    """Split ``g`` along a small cyclic cut; None when ``g`` is cyclically Δ-edge-connected.

    ``cut`` forces a particular cut (its ``side_b`` is used as B).  Raises
    :class:`SplitError` when a structural invariant fails, which happens on
    graphs whose girth is too small for the construction.
    """
    if not is_connected(g):
        raise GraphError("graph is not connected")
    if cut is None:
        if is_cyclically_k_connected(g, delta):
            return None
        cut = choose_cut(g, delta)
        if cut is None:
            return None
    A, B = cut.side_a, cut.side_b
    d0 = 2 * d + 2

    # G_X: B together with the cut edges
    gx_edges = {e for e, (u, v) in enumerate(g.edges) if u in B and v in B} | set(cut.edges)
    gx_sub = Subgraph.from_edges(g, gx_edges, B)
    gx = gx_sub.to_graph()
    gx_cut = [gx.edge_between(*g.edge_labels(e)) for e in cut.edges]
    conn_x = d_connector(gx, Subgraph.from_edges(gx, gx_cut), d0)
    conn_v = frozenset(g.vertex(gx.labels[v]) for v in conn_x.vertices)
    conn_e = frozenset(g.edge_between(*gx.edge_labels(e)) for e in conn_x.edges)
    connector = Subgraph(g, conn_v, conn_e)

    boundary = sorted(
        e for e, (u, v) in enumerate(g.edges)
        if (u in conn_v and v in B and v not in conn_v) or (v in conn_v and u in B and u not in conn_v)
    )
    outside = set(B) - conn_v
    trees: dict[int, tuple[Graph, int]] = {}
    tree_vertices: dict[int, frozenset[int]] = {}
    for e in boundary:
        u, v = g.edges[e]
        x, y = (u, v) if u in conn_v else (v, u)
        # radius d-1 keeps every tree at depth d from its root x
        ball = frozenset(z for z, k in bfs_distances(g, y, allowed=outside).items() if k <= d - 1)
        sub = Subgraph.induced(g, ball | {x})
        sub = Subgraph(g, sub.vertices, frozenset(f for f in sub.edges if x not in g.edges[f] or f == e))
        tree = sub.to_graph()
        if not is_tree(tree):
            raise SplitError(f"T({'-'.join(g.edge_labels(e))}) is not a tree")
        trees[e] = (tree, tree.vertex(g.labels[x]))
        tree_vertices[e] = sub.vertices
    roots = {e: (g.edges[e][0] if g.edges[e][0] in conn_v else g.edges[e][1]) for e in boundary}
    for i, e in enumerate(boundary):
        for f in boundary[i + 1:]:
            common = tree_vertices[e] & tree_vertices[f]
            allowed = {roots[e]} if roots[e] == roots[f] else set()
            if not common <= allowed:
                raise SplitError(
                    f"trees of {'-'.join(g.edge_labels(e))} and {'-'.join(g.edge_labels(f))} overlap"
                )

    near = set(conn_v)
    for v in conn_v:
        near.update(g.adj[v])
    ga = Subgraph.induced(g, set(A) | near).to_graph()
    if ga.m >= g.m:
        raise SplitError(f"G_A keeps all {g.m} edges")
    gi = girth(g)
    t = int(gi // 2) if gi != float("inf") else 0
    gb, w_label = contract_and_subdivide(g, A, t)
    return SplitPlan(
        g, delta, d, d0, cut, A, B, connector, boundary, trees, tree_vertices, ga, gb, w_label, t
    )


# Glue ------------------------------------------------------------------------


def _translate(src: Graph, dst: Graph, el: TotalElement) -> TotalElement | None:
    if el.kind == "v":
        lab = src.labels[el.index]
        return V(dst.vertex(lab)) if dst.has_vertex(lab) else None
    a, b = src.edge_labels(el.index)
    e = dst.edge_between(a, b) if dst.has_vertex(a) and dst.has_vertex(b) else None
    return None if e is None else E(e)


def glue_colorings(
    plan: SplitPlan, c_A: IntervalColoring, c_B: IntervalColoring, eps_pair
) -> IntervalColoring:
    """Combine a coloring of G_A and a coloring of G_B into one of the whole graph."""
    eps_prime, eps = (as_rational(x) for x in eps_pair)
    g, delta = plan.graph, plan.delta
    L, L_low = delta + 1 + eps, delta + 1 + eps_prime
    _, _, d = tree_depth_parameters(delta, eps_prime, eps)
    if plan.d > d:
        raise GlueError(f"plan built for depth {plan.d} but the recoloring allows only {d}")
    for name, c, gr, amb in (("c_A", c_A, plan.G_A, L), ("c_B", c_B, plan.G_B, L_low)):
        bad = verify_interval_coloring(gr, IntervalColoring(gr, amb, c.colors))
        if bad:
            raise GlueError(f"{name} is not valid at ambient {amb}: {describe_violation(gr, bad[0])}")
    cA = c_A.normalized()

    def from_a(el):
        return cA.colors[_translate(g, plan.G_A, el)]

    def from_b(el):
        return c_B.colors[_translate(g, plan.G_B, el)]

    inner = set(plan.B) - set(plan.connector.vertices)
    b_prime = {V(v) for v in inner}
    b_prime |= {E(e) for e, (u, v) in enumerate(g.edges) if u in inner and v in inner}
    b_prime |= {E(e) for e in plan.boundary}

    tree_colors: dict[TotalElement, Any] = {}
    for e in plan.boundary:
        tree, root = plan.trees[e]
        x_el = _translate(tree, g, V(root))
        c0 = {el: from_b(_translate(tree, g, el)) for el in total_structure(tree).elements}
        task = RecolorTask(
            tree, root, IntervalColoring(tree, L_low, c0),
            from_a(x_el), from_a(E(e)), delta, eps_prime, eps,
        )
        try:
            res = recolor_tree(task)
        except RecolorError as exc:
            raise GlueError(f"recoloring T({'-'.join(g.edge_labels(e))}) failed: {exc}") from None
        failed = [k for k, ok in res.checks.items() if not ok]
        if failed:
            raise GlueError(f"recoloring T({'-'.join(g.edge_labels(e))}) failed checks {failed}")
        for el, s in res.coloring.colors.items():
            if el != V(root):
                tree_colors[_translate(tree, g, el)] = s

    colors = {}
    for el in total_structure(g).elements:
        if el in b_prime:
            colors[el] = tree_colors[el] if el in tree_colors else from_b(el)
        else:
            colors[el] = from_a(el)
    out = IntervalColoring(g, L, colors)
    bad = verify_interval_coloring(g, out)
    if bad:
        raise GlueError(f"glued coloring invalid: {describe_violation(g, bad[0])}")
    if not boundary_agreement(plan, cA, out):  # pragma: no cover - by construction
        raise GlueError("glued coloring disagrees with c_A on the boundary")
    return out


def boundary_agreement(plan: SplitPlan, c_A: IntervalColoring, c: IntervalColoring) -> bool:
    """``c`` equals ``c_A`` (unit-normalized) on the boundary edges and their connector ends."""
    g = plan.graph
    cA = c_A.normalized()
    for e in plan.boundary:
        u, v = g.edges[e]
        x = u if u in plan.connector.vertices else v
        for el in (E(e), V(x)):
            if c.colors[el] != cA.colors[_translate(g, plan.G_A, el)]:
                return False
    return True


# Orchestrator ----------------------------------------------------------------


@dataclass
class ConstructionResult:
    coloring: IntervalColoring | None
    ok: bool
    reason: str
    trace: dict
    artifacts: dict[str, Any] = field(default_factory=dict)


class _Failure(Exception):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)


def _graph_info(g: Graph) -> dict:
    return {"n": g.n, "m": g.m, "max_degree": max_degree(g)}


def _lp_branch(g: Graph, ambient: Fraction, budget: int, node: dict) -> IntervalColoring:
    try:
        res = fractional_total_chromatic_number(g, "auto", budget)
    except BudgetExceeded as exc:  # pragma: no cover - auto mode never enumerates over budget
        raise _Failure(str(exc)) from None
    node["chi"] = q2s(res.value)
    node["lp_mode"] = res.mode
    if res.value > ambient:
        raise _Failure(f"fractional total chromatic number {res.value} exceeds {ambient}")
    return weights_to_interval_assignment(res.coloring, ambient)


def _cyclic_branch(g: Graph, delta: int, eps: Fraction, node: dict, artifacts: dict) -> IntervalColoring:
    try:
        decomp = ell_decomposition(g, delta)
    except SearchBudgetExceeded as exc:
        raise _Failure(f"decomposition search gave up: {exc}") from None
    if decomp is None:
        raise _Failure(f"no {delta}-decomposition exists")
    node["decomposition"] = decomposition_to_json(decomp)
    artifacts.setdefault("decompositions", []).append(node["decomposition"])
    eps_prime = eps / 2
    factor_colorings = []
    node["factors"] = []
    for i, f in enumerate(decomp.factors(), start=1):
        try:
            w = solve_weighted_coloring(g, factor_bounds(g, f, delta, eps_prime))
        except InfeasibleBounds as exc:
            node["factors"].append({"index": i, "feasible": False, "needed_mass": q2s(exc.bound_value)})
            raise _Failure(
                f"factor {i}: coverage bounds need total mass {exc.bound_value} > 1"
            ) from None
        node["factors"].append({"index": i, "feasible": True, "support": len(w.weights)})
        factor_colorings.append(w)
    try:
        w = compose_factor_colorings(g, decomp, factor_colorings, eps)
        frac = weighted_to_fractional(w, 1 / (delta + 1 + eps))
    except (CompositionError, ColoringError) as exc:
        raise _Failure(str(exc)) from None
    return weights_to_interval_assignment(frac, delta + 1 + eps)


def _construct(g, delta, eps, eps_tree, strategy, budget, depth, max_depth, artifacts) -> tuple[IntervalColoring, dict]:
    ambient = delta + 1 + eps
    node: dict[str, Any] = {
        "depth": depth,
        "graph": _graph_info(g),
        "epsilon": q2s(eps),
        "ambient": q2s(ambient),
    }
    try:
        if depth > max_depth:
            raise _Failure(f"recursion depth cap {max_depth} reached")
        if not is_connected(g):
            raise _Failure("graph is not connected")
        gdeg = max_degree(g)
        size = g.n + g.m
        if gdeg > delta:
            raise _Failure(f"maximum degree {gdeg} exceeds Δ = {delta}")
        use_lp = (
            strategy == "lp"
            or g.m <= delta
            or gdeg < delta
            or delta < 3
            or delta % 2 == 0
            or (strategy == "auto" and size <= budget)
        )
        if use_lp:
            node["branch"] = "lp"
            c = _lp_branch(g, ambient, budget, node)
        elif is_cyclically_k_connected(g, delta):
            node["branch"] = "cyclic"
            c = _cyclic_branch(g, delta, eps, node, artifacts)
        else:
            node["branch"] = "split"
            eps_t = eps / 2 if eps_tree is None else eps_tree
            _, _, d = tree_depth_parameters(delta, eps_t, eps)
            try:
                plan = plan_split(g, delta, d)
            except SplitError as exc:
                raise _Failure(f"split plan failed: {exc}") from None
            if plan is None:  # pragma: no cover - excluded by the cyclic test above
                raise _Failure("no small cyclic cut")
            node["plan"] = plan.to_json()
            artifacts.setdefault("plans", []).append(node["plan"])
            child = "auto" if strategy == "pipeline" else strategy
            node["children"] = []
            sub = []
            for name, h, e_h in (("G_A", plan.G_A, eps), ("G_B", plan.G_B, eps_t)):
                try:
                    c_h, t_h = _construct(h, delta, e_h, None, child, budget, depth + 1, max_depth, artifacts)
                except _Failure as f:
                    node["children"].append(f.trace)
                    raise _Failure(f"{name}: {f.reason}") from None
                node["children"].append(t_h)
                sub.append(c_h)
            c_a, c_b = sub
            try:
                c = glue_colorings(plan, c_a, c_b, (eps_t, eps))
            except GlueError as exc:
                raise _Failure(f"glue failed: {exc}") from None
        bad = verify_interval_coloring(g, c)
        node["verified"] = not bad
        if bad:
            raise _Failure(f"emitted coloring invalid: {describe_violation(g, bad[0])}")
        artifacts.setdefault("verified", []).append(
            {"depth": depth, "graph": _graph_info(g), "ambient": q2s(ambient)}
        )
        node["ok"] = True
        return c, node
    except _Failure as f:
        node["ok"] = False
        node.setdefault("verified", False)
        node["reason"] = f.reason
        f.trace = node
        raise


def construct_coloring(
    g: Graph,
    epsilon,
    *,
    eps_tree=None,
    delta: int | None = None,
    strategy: str = "auto",
    lp_budget: int | None = None,
    max_depth: int = 8,
) -> ConstructionResult:
    """Build a fractional (Δ+1+ε)-total coloring, verified before it is returned.

    ``strategy`` is ``"auto"`` (LP for instances within ``lp_budget``),
    ``"pipeline"`` (the structural pipeline at the top level) or ``"lp"``.
    Failures come back as ``ok=False`` with a reason and the verified partial
    artifacts, never as an unverified coloring.
    """
    if strategy not in ("auto", "pipeline", "lp"):
        raise ValueError(f"unknown strategy {strategy!r}")
    eps = as_rational(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    eps_t = None if eps_tree is None else as_rational(eps_tree)
    if eps_t is not None and not 0 < eps_t < eps:
        raise ValueError("need 0 < eps_tree < epsilon")
    delta = max_degree(g) if delta is None else delta
    budget = DEFAULT_ENUMERATION_BUDGET if lp_budget is None else lp_budget
    artifacts: dict[str, Any] = {}
    try:
        c, trace = _construct(g, delta, eps, eps_t, strategy, budget, 0, max_depth, artifacts)
    except _Failure as f:
        return ConstructionResult(None, False, f.reason, f.trace, artifacts)
    artifacts["coloring"] = interval_coloring_to_json(c)
    return ConstructionResult(c, True, "ok", trace, artifacts)
