import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fractotal.graph import (
    INFINITY,
    Graph,
    GraphError,
    Subgraph,
    components,
    contract_and_subdivide,
    cyclic_edge_connectivity,
    d_connector,
    find_h_path,
    girth,
    is_connected,
    is_cyclically_k_connected,
    is_d_closed,
    is_forest,
    minimal_cyclic_cuts,
    neighborhood,
)
from helpers import brute_cyclic_cuts, from_nx, to_nx


def random_connected(seed, n_lo=4, n_hi=9, max_edges=None):
    rng = random.Random(seed)
    while True:
        h = nx.gnp_random_graph(rng.randint(n_lo, n_hi), rng.uniform(0.25, 0.6), seed=rng.randrange(10**9))
        if max_edges is not None and h.number_of_edges() > max_edges:
            continue
        if h.number_of_nodes() and nx.is_connected(h):
            return h


def test_graph_basics():
    g = Graph.from_edges([("a", "b"), ("b", "c")], vertices=["d"])
    assert g.n == 4 and g.m == 2
    assert g.labels[0] == "d"
    assert g.degree(g.vertex("b")) == 2
    assert g.edge_between("c", "b") == g.edge_between("b", "c")
    assert g.edge_between("a", "c") is None
    with pytest.raises(GraphError):
        Graph(["a", "b"], [(0, 1), (1, 0)])
    with pytest.raises(GraphError):
        Graph(["a"], [(0, 0)])
    with pytest.raises(GraphError):
        Graph(["a", "a"], [])


@pytest.mark.parametrize("seed", range(60))
def test_girth_matches_networkx(seed):
    h = nx.gnp_random_graph(random.Random(seed).randint(3, 12), 0.3, seed=seed)
    g = from_nx(h)
    assert girth(g) == nx.girth(h)


def test_girth_named():
    assert girth(from_nx(nx.petersen_graph())) == 5
    assert girth(from_nx(nx.heawood_graph())) == 6
    assert girth(from_nx(nx.path_graph(5))) == INFINITY


def test_components():
    g = Graph.from_edges([("a", "b"), ("c", "d")])
    assert len(components(g)) == 2
    assert not is_connected(g)


@pytest.mark.parametrize("seed", range(40))
def test_minimal_cyclic_cuts_match_brute_force(seed):
    g = from_nx(random_connected(seed, 5, 9, max_edges=16))
    mine = {c.edges for c in minimal_cyclic_cuts(g, 3)}
    # a minimal cyclic cut of a connected graph splits it into exactly two parts
    oracle = {c for c in brute_cyclic_cuts(g, 3)}
    two_sided = set()
    for c in oracle:
        k = to_nx(g)
        k.remove_edges_from(g.edges[e] for e in c)
        if nx.number_connected_components(k) == 2:
            two_sided.add(c)
    assert mine == two_sided


@pytest.mark.parametrize("seed", range(40))
def test_cyclic_connectivity_matches_brute_force(seed):
    g = from_nx(random_connected(seed + 1000, 5, 10, max_edges=15))
    size, cut = cyclic_edge_connectivity(g)
    oracle = brute_cyclic_cuts(g, g.m)
    expected = min((len(c) for c in oracle), default=INFINITY)
    assert size == expected
    if cut is not None:
        assert len(cut.edges) == size
        assert cut.side_a.isdisjoint(cut.side_b)


def test_cyclic_connectivity_named():
    assert cyclic_edge_connectivity(from_nx(nx.petersen_graph()))[0] == 5
    assert cyclic_edge_connectivity(from_nx(nx.complete_graph(4)))[0] == INFINITY
    two_triangles = Graph.from_edges([("a", "b"), ("b", "c"), ("c", "a"), ("x", "y"), ("y", "z"), ("z", "x"), ("a", "x")])
    size, cut = cyclic_edge_connectivity(two_triangles)
    assert size == 1 and cut.size == 1
    assert cyclic_edge_connectivity(from_nx(nx.petersen_graph()), max_size=3) == (None, None)
    assert is_cyclically_k_connected(from_nx(nx.petersen_graph()), 5)
    assert not is_cyclically_k_connected(two_triangles, 2)


def test_cyclic_connectivity_rejects_disconnected():
    with pytest.raises(GraphError):
        cyclic_edge_connectivity(Graph.from_edges([("a", "b"), ("c", "d")]))


def brute_connector(g, h, d):
    """Fixpoint of adding any H-path of length <= d, found by exhaustive path search."""
    hv, he = set(h.vertices), set(h.edges)
    changed = True
    while changed:
        changed = False
        for s in sorted(hv):
            stack = [(s, [s])]
            while stack and not changed:
                u, path = stack.pop()
                if len(path) - 1 >= d:
                    continue
                for e in g.incident[u]:
                    if e in he:
                        continue
                    w = g.other_end(e, u)
                    if w in path:
                        continue
                    if w in hv:
                        if w != s:
                            hv.update(path + [w])
                            p = path + [w]
                            he.update(g.edge_id(a, b) for a, b in zip(p, p[1:]))
                            changed = True
                            break
                    else:
                        stack.append((w, path + [w]))
            if changed:
                break
    return hv, he


@pytest.mark.parametrize("seed", range(30))
def test_d_connector_matches_exhaustive_fixpoint(seed):
    rng = random.Random(seed)
    g = from_nx(random_connected(seed + 77, 6, 12))
    e0 = rng.randrange(g.m)
    h = Subgraph.from_edges(g, [e0])
    d = rng.randint(1, 4)
    conn = d_connector(g, h, d)
    hv, he = brute_connector(g, h, d)
    assert set(conn.vertices) == hv and set(conn.edges) == he
    assert is_d_closed(g, conn, d)
    # order independence
    assert d_connector(g, h, d, rng=random.Random(seed)) == conn


def test_h_path():
    g = from_nx(nx.cycle_graph(6))
    h = Subgraph.from_edges(g, [g.edge_between("0", "1")])
    path = find_h_path(g, h, 5)
    assert path is not None and len(path) == 6
    assert find_h_path(g, h, 4) is None


def test_neighborhood_and_forest():
    g = from_nx(nx.petersen_graph())
    h = Subgraph.from_edges(g, [0])
    n = neighborhood(g, h)
    assert len(n.edges) == 5 and is_forest(n)
    assert not is_forest(Subgraph.whole(g))


def test_contract_and_subdivide():
    edges = [("a", "b"), ("b", "c"), ("c", "a"), ("x", "y"), ("y", "z"), ("z", "x"), ("a", "x"), ("b", "y")]
    g = Graph.from_edges(edges)
    a_side = [g.vertex(v) for v in "abc"]
    gb, w = contract_and_subdivide(g, a_side, 2)
    assert gb.has_vertex(w)
    assert gb.degree(gb.vertex(w)) == 2
    assert gb.n == 3 + 1 + 2 * 2
    assert gb.m == 3 + 2 * 3
    assert nx.shortest_path_length(to_nx(gb), gb.vertex(w), gb.vertex("x")) == 3
    g0, _ = contract_and_subdivide(g, a_side, 0)
    assert g0.n == 4 and g0.m == 5
    fan = Graph.from_edges([("a", "b"), ("a", "x"), ("b", "x"), ("x", "y")])
    with pytest.raises(GraphError):
        contract_and_subdivide(fan, [fan.vertex("a"), fan.vertex("b")], 0)
