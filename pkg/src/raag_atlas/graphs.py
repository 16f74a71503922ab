"""Finite simplicial graphs on string labels.

Vertices are stored internally in natural label order (``v2`` before ``v10``)
and adjacency is a tuple of integer bitmasks, one per vertex.  Every
tie-break in the package ("first vertex", "least pair", "first edge") means
this internal order.  The ``*_mask`` helpers work directly on bitmasks and are
what the exhaustive sweeps call; the label-level functions wrap them.
"""
from __future__ import annotations

import math
import re
from itertools import combinations
from typing import Iterable, Iterator

from .errors import InputError

INF = math.inf

_CHUNK = re.compile(r"(\d+)")


def label_key(label: str):
    """Natural sort key: digit runs compare numerically."""
    parts = []
    for i, chunk in enumerate(_CHUNK.split(label)):
        if i % 2:
            parts.append((0, int(chunk), ""))
        elif chunk:
            parts.append((1, 0, chunk))
    return (tuple(parts), label)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def reach_mask(adj, mask: int, start: int) -> int:
    """Vertices of ``mask`` reachable from bit-set ``start`` inside ``mask``."""
    seen = frontier = start & mask
    while frontier:
        nxt = 0
        while frontier:
            low = frontier & -frontier
            nxt |= adj[low.bit_length() - 1]
            frontier ^= low
        frontier = nxt & mask & ~seen
        seen |= frontier
    return seen


def connected_mask(adj, mask: int) -> bool:
    # the empty graph counts as connected; it never arises as a star or support
    if not mask:
        return True
    return reach_mask(adj, mask, mask & -mask) == mask


def layers_mask(adj, mask: int, source: int) -> list[int]:
    """BFS layers (as bitmasks) from vertex index ``source`` inside ``mask``."""
    layers = [1 << source]
    seen = 1 << source
    while True:
        nxt = 0
        f = layers[-1]
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        nxt &= mask & ~seen
        if not nxt:
            return layers
        seen |= nxt
        layers.append(nxt)


def complement_adj(adj) -> tuple[int, ...]:
    full = (1 << len(adj)) - 1
    return tuple(full ^ a ^ (1 << i) for i, a in enumerate(adj))


def star_mask(adj, mask: int) -> int:
    out = mask
    for i in iter_bits(mask):
        out |= adj[i]
    return out


class Graph:
    """Immutable labeled simple graph.

    ``vertices`` keeps the order the caller supplied; equality and hashing
    only look at the vertex set and the edge set.
    """

    __slots__ = ("vertices", "_labels", "_index", "_adj", "_hash")

    def __init__(self, vertices: Iterable[str], edges: Iterable[Iterable[str]] = ()):
        vertices = tuple(vertices)
        for v in vertices:
            if not isinstance(v, str) or not v or any(c.isspace() for c in v):
                raise InputError(f"invalid vertex label {v!r}")
        if len(set(vertices)) != len(vertices):
            raise InputError("duplicate vertex labels")
        labels = tuple(sorted(vertices, key=label_key))
        index = {v: i for i, v in enumerate(labels)}
        adj = [0] * len(labels)
        for edge in edges:
            a, b = tuple(edge)
            if a not in index or b not in index:
                raise InputError(f"edge {a}-{b} uses an unknown vertex")
            if a == b:
                raise InputError(f"self-loop at {a}")
            i, j = index[a], index[b]
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        self._init(vertices, labels, index, tuple(adj))

    def _init(self, vertices, labels, index, adj):
        self.vertices = vertices
        self._labels = labels
        self._index = index
        self._adj = adj
        self._hash = None

    @classmethod
    def from_masks(cls, labels: tuple[str, ...], adj: tuple[int, ...]) -> "Graph":
        """Build from labels already in natural order and matching bitmasks."""
        g = cls.__new__(cls)
        g._init(labels, labels, {v: i for i, v in enumerate(labels)}, tuple(adj))
        return g

    # -- basic accessors -------------------------------------------------
    @property
    def labels(self) -> tuple[str, ...]:
        """Vertex labels in natural order (the tie-break order)."""
        return self._labels

    @property
    def adj(self) -> tuple[int, ...]:
        return self._adj

    @property
    def full_mask(self) -> int:
        return (1 << len(self._labels)) - 1

    def __len__(self) -> int:
        return len(self._labels)

    def __contains__(self, v) -> bool:
        return v in self._index

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise InputError(f"unknown vertex {v!r}") from None

    def mask_of(self, vs: Iterable[str]) -> int:
        m = 0
        for v in vs:
            m |= 1 << self.index(v)
        return m

    def labels_of(self, mask: int) -> frozenset[str]:
        return frozenset(self._labels[i] for i in iter_bits(mask))

    def sorted_labels(self, mask: int) -> list[str]:
        return [self._labels[i] for i in iter_bits(mask)]

    @property
    def edges(self) -> tuple[tuple[str, str], ...]:
        """Edges as label pairs, sorted in tie-break order."""
        out = []
        for i, a in enumerate(self._adj):
            for j in iter_bits(a >> (i + 1) << (i + 1)):
                out.append((self._labels[i], self._labels[j]))
        return tuple(out)

    def has_edge(self, a: str, b: str) -> bool:
        return bool(self._adj[self.index(a)] >> self.index(b) & 1)

    def neighbors(self, v: str) -> list[str]:
        return self.sorted_labels(self._adj[self.index(v)])

    def edge_count(self) -> int:
        return sum(bin(a).count("1") for a in self._adj) // 2

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Graph):
            return NotImplemented
        return self._labels == other._labels and self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._labels, self._adj))
        return self._hash

    def __repr__(self) -> str:
        es = " ".join(f"{a}-{b}" for a, b in self.edges)
        return f"Graph([{' '.join(self.vertices)}] {es})"


# -- operations ------------------------------------------------------------

def complement(g: Graph) -> Graph:
    out = Graph.from_masks(g._labels, complement_adj(g._adj))
    out.vertices = g.vertices
    return out


def induced(g: Graph, a: Iterable[str]) -> Graph:
    a = list(dict.fromkeys(a))
    mask = g.mask_of(a)
    labels = tuple(sorted(a, key=label_key))
    pos = [g._index[v] for v in labels]
    adj = []
    for i in pos:
        row = g._adj[i] & mask
        m = 0
        for k, j in enumerate(pos):
            if row >> j & 1:
                m |= 1 << k
        adj.append(m)
    out = Graph.from_masks(labels, tuple(adj))
    out.vertices = tuple(a)
    return out


def delete_vertex(g: Graph, v: str) -> Graph:
    return induced(g, [u for u in g.vertices if u != v])


def star(g: Graph, a: Iterable[str]) -> frozenset[str]:
    mask = g.mask_of(a)
    if not mask:
        raise InputError("star of the empty set is undefined")
    return g.labels_of(star_mask(g._adj, mask))


def dominates(g: Graph, a: Iterable[str], b: Iterable[str]) -> bool:
    """True iff every vertex of ``b`` lies in ``a`` or is adjacent to it."""
    am, bm = g.mask_of(a), g.mask_of(b)
    return bm & ~star_mask(g._adj, am) == 0


def components(g: Graph) -> list[frozenset[str]]:
    left = g.full_mask
    out = []
    while left:
        comp = reach_mask(g._adj, left, left & -left)
        out.append(g.labels_of(comp))
        left &= ~comp
    return out


def is_connected(g: Graph) -> bool:
    return connected_mask(g._adj, g.full_mask)


def is_biconnected(g: Graph) -> bool:
    full = g.full_mask
    return connected_mask(g._adj, full) and connected_mask(complement_adj(g._adj), full)


def distance(g: Graph, u: str, v: str):
    i, j = g.index(u), g.index(v)
    for d, layer in enumerate(layers_mask(g._adj, g.full_mask, i)):
        if layer >> j & 1:
            return d
    return INF


def eccentricity_mask(adj, mask: int, i: int):
    layers = layers_mask(adj, mask, i)
    if sum(layers) != mask:  # layers are disjoint, so the sum is their union
        return INF
    return len(layers) - 1


def diameter_mask(adj, mask: int):
    best = 0
    for i in iter_bits(mask):
        e = eccentricity_mask(adj, mask, i)
        if e == INF:
            return INF
        best = max(best, e)
    return best


def diameter(g: Graph):
    return diameter_mask(g._adj, g.full_mask)


def cut_vertices(g: Graph) -> frozenset[str]:
    full = g.full_mask
    if not connected_mask(g._adj, full):
        raise InputError("cut_vertices needs a connected graph")
    return g.labels_of(sum(1 << i for i in range(len(g)) if not connected_mask(g._adj, full ^ (1 << i))))


# -- builders ----------------------------------------------------------------

def _names(n: int, prefix: str = "v", start: int = 1) -> list[str]:
    return [f"{prefix}{k}" for k in range(start, start + n)]


def path_graph(n: int | Iterable[str]) -> Graph:
    """P_n on v1..vn, or on the given labels in path order."""
    labels = _names(n) if isinstance(n, int) else list(n)
    if not labels:
        raise InputError("path graph needs at least one vertex")
    return Graph(labels, zip(labels, labels[1:]))


def cycle_graph(n: int | Iterable[str]) -> Graph:
    labels = _names(n) if isinstance(n, int) else list(n)
    if len(labels) < 3:
        raise InputError("cycle graph needs at least three vertices")
    return Graph(labels, zip(labels, labels[1:] + labels[:1]))


def edgeless_graph(labels: Iterable[str]) -> Graph:
    return Graph(labels)


def complete_graph(labels: Iterable[str]) -> Graph:
    labels = list(labels)
    return Graph(labels, combinations(labels, 2))


def _rename_apart(g1: Graph, g2: Graph) -> tuple[Graph, dict[str, str]]:
    taken = set(g1.vertices)
    rename = {}
    for v in g2.vertices:
        new = v
        while new in taken:
            new += "'"
        taken.add(new)
        rename[v] = new
    return Graph([rename[v] for v in g2.vertices], [(rename[a], rename[b]) for a, b in g2.edges]), rename


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """Clashing labels of ``g2`` get primes appended until unique."""
    g2, _ = _rename_apart(g1, g2)
    return Graph(g1.vertices + g2.vertices, g1.edges + g2.edges)


def join(g1: Graph, g2: Graph) -> Graph:
    g2, _ = _rename_apart(g1, g2)
    across = [(a, b) for a in g1.vertices for b in g2.vertices]
    return Graph(g1.vertices + g2.vertices, g1.edges + g2.edges + tuple(across))


def relabel(g: Graph, mapping: dict[str, str]) -> Graph:
    return Graph([mapping.get(v, v) for v in g.vertices],
                 [(mapping.get(a, a), mapping.get(b, b)) for a, b in g.edges])
