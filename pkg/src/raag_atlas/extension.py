"""Finite pieces of the extension graph.

A vertex ``v^g = g^-1 v g`` only depends on the coset ``Z(v) g``, and
``Z(v)`` is the subgroup generated by the star of ``v``.  The canonical
conjugator is what is left of ``g`` after deleting every letter from the
star of ``v`` that can be commuted to the front.

A :class:`Ball` collects all ``v^(c s)`` for conjugators ``c`` of length at
most the radius and translating elements ``s`` from a seed list (just the
identity by default).  Translates of a ball by powers of ``g`` are what make
the orbit of a base vertex under ``g`` visible without an enormous radius.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BallOverflow, InputError
from .graphs import INF, Graph, star_mask
from .words import GroupElement, commutator_trivial, invert_letters, lex_normal_form, reduce_letters

DEFAULT_CAP = 200_000


def _strip_front(adj, letters: Sequence[int], keep_out: int) -> list[int]:
    """Delete letters with generator in ``keep_out`` that can reach the front."""
    seen = 0
    out = []
    for x in letters:
        gen = x >> 1
        if keep_out >> gen & 1 and not seen & ~adj[gen]:
            continue
        seen |= 1 << gen
        out.append(x)
    return out


@dataclass(frozen=True)
class ConjugateVertex:
    base: str
    conjugator: GroupElement

    @property
    def graph(self) -> Graph:
        return self.conjugator.graph

    def element(self) -> GroupElement:
        return GroupElement.generator(self.graph, self.base).conjugate(self.conjugator)

    def raw_letters(self) -> list[int]:
        """Unreduced word ``c^-1 v c`` for this vertex."""
        c = self.conjugator.letters
        return invert_letters(c) + [2 * self.graph.index(self.base)] + list(c)

    def act(self, h: GroupElement) -> "ConjugateVertex":
        """Right action ``(v^g)^h = v^(gh)``."""
        return canonical_conjugate(self.base, self.conjugator * h)

    def __str__(self) -> str:
        return self.base if self.conjugator.is_identity() else f"{self.base}^({self.conjugator})"


def canonical_conjugate(v: str, g: GroupElement) -> ConjugateVertex:
    graph = g.graph
    i = graph.index(v)
    adj = graph.adj
    stripped = _strip_front(adj, g.letters, star_mask(adj, 1 << i))
    rep = GroupElement(graph, lex_normal_form(adj, stripped), _canonical=True)
    return ConjugateVertex(v, rep)


def vertex(graph: Graph, v: str, g: GroupElement | None = None) -> ConjugateVertex:
    return canonical_conjugate(v, g if g is not None else GroupElement.identity(graph))


def adjacent(a: ConjugateVertex, b: ConjugateVertex) -> bool:
    """Distinct conjugates that commute as group elements."""
    if a.graph != b.graph:
        raise InputError("conjugate vertices over different graphs")
    return a != b and commutator_trivial(a.graph.adj, a.raw_letters(), b.raw_letters())


def _adjacent_fast(adj, i: int, c: Sequence[int], j: int, d: Sequence[int]) -> bool:
    # v_i^c ~ v_j^d  iff  v_j^(d c^-1) lies in Z(v_i).  With k the canonical
    # conjugator of v_j^(d c^-1), the word k^-1 v_j k is reduced, so this
    # holds iff v_j and every letter of k lie in the star of v_i.
    if not adj[i] >> j & 1:
        return False
    k = reduce_letters(adj, list(d) + [x ^ 1 for x in reversed(c)])
    st_j = adj[j] | (1 << j)
    st_i = adj[i] | (1 << i)
    seen = 0
    for x in k:
        gen = x >> 1
        if st_j >> gen & 1 and not seen & ~adj[gen]:
            continue
        if not st_i >> gen & 1:
            return False
        seen |= 1 << gen
    return True


def elements_by_length(graph: Graph, radius: int, cap: int | None = None) -> list[GroupElement]:
    """All elements of word length <= radius, in BFS order with letters in label order."""
    level = [GroupElement.identity(graph)]
    seen = set(level)
    out = list(level)
    letters = range(2 * len(graph))
    for _ in range(radius):
        nxt = []
        for e in level:
            for x in letters:
                f = GroupElement(graph, e.letters + (x,))
                if f not in seen:
                    seen.add(f)
                    nxt.append(f)
                    if cap is not None and len(seen) > cap:
                        raise BallOverflow(cap, len(seen))
        out += nxt
        level = nxt
    return out


@dataclass
class Ball:
    graph: Graph
    radius: int
    vertices: list[ConjugateVertex]
    edges: list[tuple[int, int]]
    boundary: list[bool]
    seeds: list[GroupElement] = field(default_factory=list)

    def __post_init__(self):
        self.index = {x: k for k, x in enumerate(self.vertices)}
        self.neighbors: list[list[int]] = [[] for _ in self.vertices]
        for a, b in self.edges:
            self.neighbors[a].append(b)
            self.neighbors[b].append(a)

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, x) -> bool:
        return x in self.index

    def locate(self, x: ConjugateVertex) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise InputError(f"vertex {x} is not in the ball") from None

    def bfs(self, source: ConjugateVertex) -> list[float]:
        dist = [INF] * len(self.vertices)
        s = self.locate(source)
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in self.neighbors[u]:
                if dist[w] == INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def distance(self, a: ConjugateVertex, c: ConjugateVertex):
        return ball_distance(self, a, c)

    def to_json(self) -> str:
        payload = {
            "graph": {"vertices": list(self.graph.vertices), "edges": [list(e) for e in self.graph.edges]},
            "radius": self.radius,
            "seeds": [str(s) for s in self.seeds],
            "vertices": [{"base": x.base, "conjugator": str(x.conjugator)} for x in self.vertices],
            "edges": [list(e) for e in self.edges],
        }
        return json.dumps(payload, indent=2)


def ball(graph: Graph, radius: int, seeds: Iterable[GroupElement] | None = None,
         cap: int = DEFAULT_CAP) -> Ball:
    """Truncation of the extension graph; see the module docstring.

    Raises :class:`BallOverflow` once more than ``cap`` vertices are found.
    """
    if radius < 0:
        raise InputError("radius must be non-negative")
    seeds = list(seeds) if seeds is not None else [GroupElement.identity(graph)]
    conjugators = elements_by_length(graph, radius, cap)
    adj = graph.adj
    order: dict[ConjugateVertex, int] = {}
    inner: list[bool] = []
    for s in seeds:
        for c in conjugators:
            cs = c * s
            for v in graph.labels:
                x = canonical_conjugate(v, cs)
                k = order.get(x)
                if k is None:
                    if len(order) >= cap:
                        raise BallOverflow(cap, len(order) + 1)
                    order[x] = len(inner)
                    inner.append(len(c) < radius)
                elif len(c) < radius:
                    inner[k] = True
    verts = list(order)
    idx = [graph.index(x.base) for x in verts]
    lets = [x.conjugator.letters for x in verts]
    by_base: dict[int, list[int]] = {}
    for k, i in enumerate(idx):
        by_base.setdefault(i, []).append(k)
    edges = []
    for i, ks in by_base.items():
        for j, ls in by_base.items():
            if j <= i or not adj[i] >> j & 1:
                continue
            for a in ks:
                for b in ls:
                    if _adjacent_fast(adj, i, lets[a], j, lets[b]):
                        edges.append((a, b) if a < b else (b, a))
    edges.sort()
    return Ball(graph, radius, verts, edges, [not f for f in inner], seeds)


def ball_distance(b: Ball, a: ConjugateVertex, c: ConjugateVertex):
    """Distance inside the truncation; never smaller than the true distance."""
    return b.bfs(a)[b.locate(c)]


@dataclass(frozen=True)
class OrbitSample:
    n: int
    distance: float
    ratio: Fraction | float
    boundary_touched: bool


def orbit_ratio(graph: Graph, g: GroupElement, base: str, n_max: int, radius: int,
                cap: int = DEFAULT_CAP) -> list[OrbitSample]:
    """Truncated distances from ``base`` to ``base^(g^n)`` for n = 1..n_max.

    The ball is seeded with ``g^0 .. g^n_max``.  ``boundary_touched`` marks
    samples where BFS met an outermost-shell vertex before reaching the
    target, i.e. a shorter path might leave the truncation.
    """
    if g.is_identity():
        raise InputError("orbit_ratio needs a nontrivial element")
    if n_max < 1:
        raise InputError("n_max must be at least 1")
    graph.index(base)
    powers = [g ** k for k in range(n_max + 1)]
    b = ball(graph, radius, powers, cap)
    src = vertex(graph, base)
    dist = b.bfs(src)
    out = []
    for n in range(1, n_max + 1):
        target = b.locate(canonical_conjugate(base, powers[n]))
        d = dist[target]
        touched = any(b.boundary[k] and dist[k] < d for k in range(len(b)))
        ratio = Fraction(d, n) if d != INF else INF
        out.append(OrbitSample(n, d, ratio, touched))
    return out
