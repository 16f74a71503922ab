"""Text formats for graphs: the edge-list format and graph6 lines.

Edge-list::

    # comment
    vertices: v1 v2 v3 v4
    edge: v1 v2
    edge: v2 v3

graph6 vertices are named v1..vn in bit order.
"""
from __future__ import annotations

from .errors import InputError
from .graphs import Graph


def format_edge_list(g: Graph) -> str:
    lines = ["vertices: " + " ".join(g.vertices)]
    lines += [f"edge: {a} {b}" for a, b in g.edges]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    vertices = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("vertices", "edge"):
            raise InputError(f"line {lineno}: expected 'vertices:' or 'edge:', got {raw.strip()!r}")
        fields = rest.split()
        if key == "vertices":
            if vertices is not None:
                raise InputError(f"line {lineno}: duplicate 'vertices:' line")
            vertices = fields
        else:
            if vertices is None:
                raise InputError(f"line {lineno}: 'edge:' before 'vertices:'")
            if len(fields) != 2:
                raise InputError(f"line {lineno}: an edge needs exactly two labels")
            a, b = fields
            for v in fields:
                if v not in vertices:
                    raise InputError(f"line {lineno}: unknown vertex {v!r}")
            if a == b:
                raise InputError(f"line {lineno}: self-loop at {a}")
            edges.append((a, b))
    if vertices is None:
        raise InputError("no 'vertices:' line found")
    try:
        return Graph(vertices, edges)
    except InputError as exc:
        raise InputError(f"line 1: {exc}") from None


def _pair_order(n: int):
    # graph6 upper triangle, column by column
    for j in range(1, n):
        for i in range(j):
            yield i, j


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise InputError("graph too large for graph6")


def to_graph6(g: Graph) -> str:
    """Encode with vertices taken in natural label order."""
    n = len(g)
    bits = [1 if g.adj[i] >> j & 1 else 0 for i, j in _pair_order(n)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(chr(int("".join(map(str, bits[k:k + 6])), 2) + 63) for k in range(0, len(bits), 6))
    return _encode_n(n) + body


def parse_graph6(line: str, lineno: int | None = None) -> Graph:
    where = f"line {lineno}: " if lineno is not None else ""
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s or any(not 63 <= ord(c) <= 126 for c in s):
        raise InputError(f"{where}not a graph6 string: {line.strip()!r}")
    vals = [ord(c) - 63 for c in s]
    if vals[0] == 63:
        if len(vals) < 4 or vals[1] == 63:
            raise InputError(f"{where}unsupported graph6 size header")
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        body = vals[4:]
    else:
        n = vals[0]
        body = vals[1:]
    need = n * (n - 1) // 2
    if len(body) != (need + 5) // 6:
        raise InputError(f"{where}graph6 body has wrong length for n={n}")
    bits = [(v >> (5 - k)) & 1 for v in body for k in range(6)]
    labels = [f"v{k}" for k in range(1, n + 1)]
    edges = [(labels[i], labels[j]) for b, (i, j) in zip(bits, _pair_order(n)) if b]
    return Graph(labels, edges)


def parse_graphs(text: str) -> list[Graph]:
    """Edge-list text (one graph) or graph6 lines (one graph per line)."""
    content = [(k, ln.split("#", 1)[0].strip()) for k, ln in enumerate(text.splitlines(), 1)]
    content = [(k, ln) for k, ln in content if ln]
    if not content:
        raise InputError("empty graph input")
    if content[0][1].startswith(("vertices:", "vertices ", "edge:")):
        return [parse_edge_list(text)]
    return [parse_graph6(ln, k) for k, ln in content]
