import random
from fractions import Fraction

import networkx as nx
import pytest
import sympy

from fractotal.coloring import (
    IntervalColoring,
    WeightedColoring,
    solve_weighted_coloring,
    verify_interval_coloring,
)
from fractotal.construct import (
    CompositionError,
    GlueError,
    boundary_agreement,
    choose_cut,
    compose_factor_colorings,
    composition_coefficients,
    construct_coloring,
    factor_bounds,
    glue_colorings,
    plan_split,
)
from fractotal.decompose import ell_decomposition
from fractotal.fixtures import load
from fractotal.graph import Graph, is_tree, max_degree
from fractotal.total import E, V
from helpers import from_nx

SPLIT_EDGES = [
    ("a0", "a1"), ("a1", "a2"), ("a2", "a3"), ("a3", "a0"),
    ("a1", "q1"), ("q1", "q2"), ("a3", "q3"), ("q3", "q4"),
    ("b0", "b1"), ("b1", "b2"), ("b2", "b3"), ("b3", "b0"),
    ("a0", "b0"), ("a2", "b2"), ("b1", "p1"), ("p1", "p2"),
]


def two_squares() -> Graph:
    """Two 4-cycles joined by a 2-edge cyclic cut, with pendant paths."""
    return Graph.from_edges(SPLIT_EDGES)


def cycle_with_pendants(n: int, delta: int, every: int = 2) -> Graph:
    h = nx.cycle_graph(n)
    nxt = n
    for v in range(0, n, every):
        for _ in range(delta - 2):
            h.add_edge(v, nxt)
            nxt += 1
    return from_nx(h)


# composition ---------------------------------------------------------------


def test_coefficients_form_a_convex_combination():
    for k in range(1, 8):
        a, b = composition_coefficients(k)
        assert k * a + b == 1


def test_coverage_chain_is_an_identity():
    k, eps = sympy.symbols("k epsilon", positive=True)
    a = (2 * k + 1) / (2 * k * (k + 1))
    middle = 1 / ((k + 1) * (2 + eps / (2 * k + 1)))
    vertex = k * a * 2 / (2 * (2 * k + 1) + eps)
    edge = a * 2 * k / (2 * (2 * k + 1 + eps / 2))
    assert sympy.simplify(vertex - middle) == 0
    assert sympy.simplify(edge - middle) == 0
    # middle > 1/(2k+2+eps): the difference has numerator k*eps > 0
    assert sympy.factor(sympy.together(middle - 1 / (2 * k + 2 + eps))) == sympy.factor(
        k * eps / ((k + 1) * (4 * k + eps + 2) * (2 * k + eps + 2))
    )


@pytest.mark.parametrize("delta", [3, 5, 7])
def test_composition_on_pendant_cycles(delta):
    g = cycle_with_pendants(6, delta)
    dec = ell_decomposition(g, delta)
    eps = Fraction(1, 2)
    ws = [solve_weighted_coloring(g, factor_bounds(g, f, delta, eps / 2)) for f in dec.factors()]
    w = compose_factor_colorings(g, dec, ws, eps)
    assert w.total() == 1
    assert w.min_coverage() >= 1 / (delta + 1 + eps)


def test_composition_rejects_bad_inputs():
    g = cycle_with_pendants(6, 5)
    dec = ell_decomposition(g, 5)
    eps = Fraction(1, 2)
    ws = [solve_weighted_coloring(g, factor_bounds(g, f, 5, eps / 2)) for f in dec.factors()]
    with pytest.raises(CompositionError, match="positive"):
        compose_factor_colorings(g, dec, ws, 0)
    with pytest.raises(CompositionError, match="need 2"):
        compose_factor_colorings(g, dec, ws[:1], eps)
    with pytest.raises(CompositionError, match="mass"):
        compose_factor_colorings(g, dec, [ws[0].scaled(2), ws[1]], eps)
    weak = WeightedColoring(g, {frozenset([V(0)]): Fraction(1)})
    with pytest.raises(CompositionError, match="covered"):
        compose_factor_colorings(g, dec, [weak, ws[1]], eps)
    even = from_nx(nx.cycle_graph(5))
    with pytest.raises(CompositionError, match="odd"):
        compose_factor_colorings(even, ell_decomposition(even, 2), [], eps)


# split plans ---------------------------------------------------------------


def test_two_squares_plan():
    g = two_squares()
    plan = plan_split(g, 3, 19)
    lab = g.labels
    assert sorted("-".join(sorted(g.edge_labels(e))) for e in plan.cut.edges) == ["a0-b0", "a2-b2"]
    assert sorted(lab[v] for v in plan.B) == ["b0", "b1", "b2", "b3", "p1", "p2"]
    assert [sorted(g.edge_labels(e)) for e in plan.boundary] == [["b1", "p1"]]
    (verts,) = plan.tree_vertices.values()
    assert sorted(lab[v] for v in verts) == ["b1", "p1", "p2"]
    assert plan.G_A.m < g.m
    data = plan.to_json()
    assert data["d0"] == 2 * 19 + 2


def test_cyclically_connected_graph_has_no_plan():
    assert plan_split(load("petersen").graph, 3, 5) is None
    assert choose_cut(load("petersen").graph, 3) is None


def split_family(seed: int) -> Graph:
    """Two long cycles joined by a 2-edge cut, plus random pendant paths."""
    rng = random.Random(seed)
    p, q = rng.randint(18, 24), rng.randint(18, 24)
    h = nx.disjoint_union(nx.cycle_graph(p), nx.cycle_graph(q))
    h.add_edge(0, p)
    h.add_edge(p // 2, p + q // 2)
    nxt = p + q
    for v in list(h.nodes()):
        if h.degree(v) == 2 and rng.random() < 0.4:
            h.add_edge(v, nxt)
            for _ in range(rng.randint(0, 2)):
                h.add_edge(nxt, nxt + 1)
                nxt += 1
            nxt += 1
    return from_nx(h)


@pytest.mark.parametrize("seed", range(8))
def test_plan_invariants(seed):
    g = split_family(seed)
    plan = plan_split(g, 3, 3)  # connector radius 8 stays inside the long cycle
    assert plan.G_A.m < g.m
    roots = {}
    for e, (tree, root) in plan.trees.items():
        assert is_tree(tree) and tree.degree(root) == 1
        roots[e] = g.vertex(tree.labels[root])
    boundary = plan.boundary
    for i, e in enumerate(boundary):
        for f in boundary[i + 1:]:
            shared = plan.tree_vertices[e] & plan.tree_vertices[f]
            assert shared <= ({roots[e]} if roots[e] == roots[f] else set())


def test_glue_checks_its_inputs():
    g = two_squares()
    plan = plan_split(g, 3, 19)
    empty_a = IntervalColoring(plan.G_A, Fraction(5), {})
    empty_b = IntervalColoring(plan.G_B, Fraction(9, 2), {})
    with pytest.raises(GlueError, match="c_A"):
        glue_colorings(plan, empty_a, empty_b, (Fraction(1, 2), 1))
    with pytest.raises(GlueError, match="depth"):
        glue_colorings(plan, empty_a, empty_b, (Fraction(1, 2), 2))


# orchestrator --------------------------------------------------------------


def test_pipeline_on_two_squares():
    g = two_squares()
    res = construct_coloring(g, 1, strategy="pipeline")
    assert res.ok, res.reason
    assert res.trace["branch"] == "split"
    assert [c["branch"] for c in res.trace["children"]] == ["lp", "lp"]
    assert res.coloring.ambient == 5
    assert verify_interval_coloring(g, res.coloring) == []
    assert res.artifacts["plans"][0]["cut"] == [["a0", "b0"], ["a2", "b2"]]


@pytest.mark.parametrize("name", ["petersen", "heawood"])
def test_cyclic_branch(name):
    g = load(name).graph
    res = construct_coloring(g, 1, strategy="pipeline")
    assert res.ok and res.trace["branch"] == "cyclic"
    assert verify_interval_coloring(g, res.coloring) == []


def test_structured_failures():
    res = construct_coloring(load("petersen").graph, Fraction(1, 2), strategy="pipeline")
    assert not res.ok and res.coloring is None
    assert "coverage bounds" in res.reason and res.trace["verified"] is False
    res = construct_coloring(load("K4").graph, Fraction(1, 2))
    assert not res.ok and "exceeds" in res.reason
    res = construct_coloring(load("K4").graph, 1, delta=2)
    assert not res.ok and "exceeds" in res.reason


def test_k2_lp_branch():
    res = construct_coloring(load("K2").graph, 1)
    assert res.ok and res.coloring.ambient == 3 and res.trace["branch"] == "lp"


def test_argument_errors():
    g = load("K2").graph
    with pytest.raises(ValueError):
        construct_coloring(g, 0)
    with pytest.raises(ValueError):
        construct_coloring(g, 1, strategy="magic")
    with pytest.raises(ValueError):
        construct_coloring(g, 1, eps_tree=2)
