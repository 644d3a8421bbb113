"""Reading and writing graphs: whitespace edge lists and graph6."""

from __future__ import annotations

from pathlib import Path

from .graph import Graph, GraphError


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_edge_list(text: str) -> Graph:
    """Parse ``u v`` lines; ``#`` starts a comment, a lone token declares a vertex.

    Vertex ids follow first appearance, so the same text always yields the
    same id assignment.
    """
    order = []
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) > 2:
            raise ParseError(f"expected 'u v', got {line!r}", lineno)
        order.extend(tokens)
        if len(tokens) == 2:
            a, b = tokens
            if a == b:
                raise ParseError(f"loop at {a!r}", lineno)
            key = frozenset(tokens)
            if key in seen:
                raise ParseError(f"duplicate edge {a}-{b}", lineno)
            seen.add(key)
            edges.append((a, b))
    if not order:
        raise ParseError("empty graph file")
    try:
        return Graph.from_edges(edges, vertices=dict.fromkeys(order))
    except GraphError as exc:
        raise ParseError(str(exc)) from None


def format_edge_list(g: Graph, header: list[str] | None = None) -> str:
    lines = [f"# {h}" for h in header or []]
    touched = set()
    for u, v in g.edges:
        touched.update((u, v))
    lines += [g.labels[v] for v in range(g.n) if v not in touched]
    lines += [f"{a} {b}" for a, b in g.label_pairs()]
    return "\n".join(lines) + "\n"


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 string; vertex labels are ``"0" .. "n-1"``."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    data = [ord(c) - 63 for c in s]
    if not data or any(not 0 <= x < 64 for x in data):
        raise ParseError("invalid graph6 string")
    if data[0] < 63:
        n, rest = data[0], data[1:]
    elif len(data) >= 4 and data[1] < 63:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        rest = data[4:]
    else:
        raise ParseError("graph6 orders above 258047 are not supported")
    bits = []
    for x in rest:
        bits.extend((x >> k) & 1 for k in range(5, -1, -1))
    need = n * (n - 1) // 2
    if len(bits) < need:
        raise ParseError("graph6 string too short")
    edges = []
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                edges.append((i, j))
            pos += 1
    return Graph([str(i) for i in range(n)], edges)


def format_graph6(g: Graph) -> str:
    n = g.n
    if n >= 63:
        head = [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    else:
        head = [n]
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if g.edge_id(i, j) is not None else 0)
    while len(bits) % 6:
        bits.append(0)
    body = [int("".join(map(str, bits[k:k + 6])), 2) for k in range(0, len(bits), 6)]
    return "".join(chr(x + 63) for x in head + body)


def read_graph(path: str | Path) -> Graph:
    """Load an edge-list file, or graph6 for ``.g6`` files and ``>>graph6<<`` headers."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".g6" or text.startswith(">>graph6<<"):
        first = next((ln for ln in text.splitlines() if ln.strip()), "")
        return parse_graph6(first)
    return parse_edge_list(text)
