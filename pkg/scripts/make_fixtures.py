"""Regenerate the bundled fixture files (needs networkx).

Attributes are computed with the toolkit itself; the fixture test suite
re-derives them, so a wrong value here fails the tests.
"""

import sys
from pathlib import Path

import networkx as nx

from fractotal.coloring import fractional_total_chromatic_number, verify_certificate
from fractotal.graph import Graph, cyclic_edge_connectivity, girth, max_degree
from fractotal.graphio import format_edge_list

OUT = Path(__file__).resolve().parents[1] / "src" / "fractotal" / "data"

GRAPHS = {
    "K2": lambda: nx.complete_graph(2),
    "P3": lambda: nx.path_graph(3),
    "C4": lambda: nx.cycle_graph(4),
    "C5": lambda: nx.cycle_graph(5),
    "C6": lambda: nx.cycle_graph(6),
    "C7": lambda: nx.cycle_graph(7),
    "K4": lambda: nx.complete_graph(4),
    "K6": lambda: nx.complete_graph(6),
    "K2_2": lambda: nx.complete_bipartite_graph(2, 2),
    "K3_3": lambda: nx.complete_bipartite_graph(3, 3),
    "petersen": nx.petersen_graph,
    "heawood": nx.heawood_graph,
    "mcgee": lambda: nx.LCF_graph(24, [12, 7, -7], 8),
    "pappus": nx.pappus_graph,
    "dodecahedron": nx.dodecahedral_graph,
}


def fmt(x):
    return "inf" if x == float("inf") else str(x)


def main(names):
    for name in names or GRAPHS:
        h = GRAPHS[name]()
        g = Graph.from_edges(
            [(str(a), str(b)) for a, b in h.edges()], [str(v) for v in h.nodes()]
        )
        cc, _ = cyclic_edge_connectivity(g)
        res = fractional_total_chromatic_number(g, "column-gen")
        assert not verify_certificate(res.certificate)
        header = [
            f"fixture: {name}",
            f"girth: {fmt(girth(g))}",
            f"max_degree: {max_degree(g)}",
            f"cyclic_connectivity: {fmt(cc)}",
            f"chi: {res.value}",
        ]
        (OUT / f"{name}.edges").write_text(format_edge_list(g, header), encoding="utf-8")
        print(name, *header[1:], sep="  ")


if __name__ == "__main__":
    main(sys.argv[1:])
