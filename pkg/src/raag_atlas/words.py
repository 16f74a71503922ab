"""Elements of the right-angled Artin group A(G).

A letter is packed into an int: ``2*i`` for generator ``i`` (natural label
order) and ``2*i + 1`` for its inverse.  Comparing packed letters therefore
compares by label first and puts the inverse after the generator, which is
the order the canonical normal form minimizes.

Reduction appends letters one at a time and cancels against the nearest
earlier letter on the same generator when everything in between commutes
with it.  The canonical form is then the lexicographically least word in the
commutation class, built greedily from the letters that can be moved to
the front.
"""
from __future__ import annotations

import re
from collections import deque
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InputError
from .graphs import Graph

Word = Sequence[tuple[str, int]]


def reduce_letters(adj, letters: Iterable[int]) -> list[int]:
    out: list[int] = []
    for x in letters:
        ok = adj[x >> 1]
        inv = x ^ 1
        for j in range(len(out) - 1, -1, -1):
            y = out[j]
            if y == inv:
                del out[j]
                break
            if not ok >> (y >> 1) & 1:
                out.append(x)
                break
        else:
            out.append(x)
    return out


def is_reduced_letters(adj, letters: Sequence[int]) -> bool:
    return len(reduce_letters(adj, letters)) == len(letters)


@lru_cache(maxsize=256)
def _blockers(adj: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    n = len(adj)
    return tuple(tuple(j for j in range(n) if j != i and not adj[i] >> j & 1) for i in range(n))


def canonical_letters(adj, letters: Iterable[int]) -> tuple[int, ...]:
    """Reduce and normalize in one pass using one pile per generator.

    Each letter sits on its own pile and leaves a placeholder (-1) on the
    pile of every generator it does not commute with.  A letter cancels
    against the top of its pile when that top is its inverse.  Letters at the
    bottom of a pile are exactly the ones that can be moved to the front;
    taking the least of them each time gives the lex-least shuffle.
    """
    adj = tuple(adj)
    blockers = _blockers(adj)
    piles = [deque() for _ in adj]
    size = 0
    for x in letters:
        i = x >> 1
        p = piles[i]
        if p and p[-1] == x ^ 1:
            p.pop()
            for j in blockers[i]:
                piles[j].pop()
            size -= 1
        else:
            p.append(x)
            for j in blockers[i]:
                piles[j].append(-1)
            size += 1
    out = []
    for _ in range(size):
        best = -1
        for p in piles:
            if p:
                x = p[0]
                if x >= 0 and (best < 0 or x < best):
                    best = x
        i = best >> 1
        piles[i].popleft()
        for j in blockers[i]:
            piles[j].popleft()
        out.append(best)
    return tuple(out)


def lex_normal_form(adj, letters: Sequence[int]) -> tuple[int, ...]:
    """Least shuffle of an already reduced word under commutation."""
    return canonical_letters(adj, letters)


def front_letters(adj, letters: Sequence[int]) -> list[int]:
    """Positions of letters that can be commuted to the front."""
    seen = 0
    out = []
    for k, x in enumerate(letters):
        gen = x >> 1
        if not seen & ~adj[gen]:
            out.append(k)
        seen |= 1 << gen
    return out


def back_letters(adj, letters: Sequence[int]) -> list[int]:
    seen = 0
    out = []
    for k in range(len(letters) - 1, -1, -1):
        gen = letters[k] >> 1
        if not seen & ~adj[gen]:
            out.append(k)
        seen |= 1 << gen
    return out[::-1]


def invert_letters(letters: Sequence[int]) -> list[int]:
    return [x ^ 1 for x in reversed(letters)]


class GroupElement:
    """An element of A(G), stored as its canonical normal form."""

    __slots__ = ("graph", "letters", "_hash")

    def __init__(self, graph: Graph, letters: Iterable[int] = (), *, _canonical: bool = False):
        self.graph = graph
        if _canonical:
            self.letters = tuple(letters)
        else:
            self.letters = canonical_letters(graph.adj, letters)
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def identity(cls, graph: Graph) -> "GroupElement":
        return cls(graph, (), _canonical=True)

    @classmethod
    def generator(cls, graph: Graph, v: str, sign: int = 1) -> "GroupElement":
        return cls(graph, (2 * graph.index(v) + (sign < 0),), _canonical=True)

    # -- views ------------------------------------------------------------
    def __len__(self) -> int:
        return len(self.letters)

    @property
    def word(self) -> list[tuple[str, int]]:
        labels = self.graph.labels
        return [(labels[x >> 1], -1 if x & 1 else 1) for x in self.letters]

    def is_identity(self) -> bool:
        return not self.letters

    def support_mask(self) -> int:
        m = 0
        for x in self.letters:
            m |= 1 << (x >> 1)
        return m

    def support(self) -> frozenset[str]:
        return self.graph.labels_of(self.support_mask())

    def is_positive(self) -> bool:
        return all(not x & 1 for x in self.letters)

    # -- group structure ----------------------------------------------------
    def _check(self, other: "GroupElement") -> None:
        if not isinstance(other, GroupElement):
            raise TypeError(f"expected GroupElement, got {type(other).__name__}")
        if other.graph is not self.graph and other.graph != self.graph:
            raise InputError("elements live in different right-angled Artin groups")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(self.graph, self.letters + other.letters)

    def inverse(self) -> "GroupElement":
        return GroupElement(self.graph, invert_letters(self.letters))

    def __invert__(self) -> "GroupElement":
        return self.inverse()

    def __pow__(self, n: int) -> "GroupElement":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = GroupElement.identity(self.graph)
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conjugate(self, h: "GroupElement") -> "GroupElement":
        """``self^h = h^-1 self h``."""
        return h.inverse() * self * h

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.letters == other.letters and (other.graph is self.graph or other.graph == self.graph)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.letters)
        return self._hash

    def __str__(self) -> str:
        return format_word(self.word)

    def __repr__(self) -> str:
        return f"GroupElement({str(self)!r})"


# -- text form -------------------------------------------------------------

_TOKEN = re.compile(r"^(?P<gen>[^\s^]+)(?:\^(?P<exp>[+-]?\d+))?$")


def format_word(word: Word) -> str:
    if not word:
        return "1"
    return " ".join(v if s > 0 else f"{v}^-1" for v, s in word)


def parse_word(text: str) -> list[tuple[str, int]]:
    """Tokens ``v3`` / ``v3^-1``; any integer exponent is expanded; ``1`` is empty."""
    out = []
    for tok in text.split():
        if tok == "1":
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise InputError(f"bad word token {tok!r}")
        exp = int(m.group("exp") or 1)
        sign = 1 if exp > 0 else -1
        out += [(m.group("gen"), sign)] * abs(exp)
    return out


def letters_of(graph: Graph, word: Word | str) -> list[int]:
    if isinstance(word, str):
        word = parse_word(word)
    out = []
    for v, s in word:
        if s not in (1, -1):
            raise InputError(f"letter sign must be +1 or -1, got {s}")
        out.append(2 * graph.index(v) + (s < 0))
    return out


# -- operations ------------------------------------------------------------

def reduce(graph: Graph, word: Word | str) -> GroupElement:
    return GroupElement(graph, letters_of(graph, word))


element = reduce


def equals(g: GroupElement, h: GroupElement) -> bool:
    """Word-problem equality: ``g h^-1`` reduces to the empty word."""
    g._check(h)
    return not reduce_letters(g.graph.adj, g.letters + tuple(invert_letters(h.letters)))


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    return g * h


def inverse(g: GroupElement) -> GroupElement:
    return g.inverse()


def power(g: GroupElement, n: int) -> GroupElement:
    return g ** n


def support(g: GroupElement) -> frozenset[str]:
    return g.support()


def commutes(g: GroupElement, h: GroupElement) -> bool:
    """``gh = hg``, decided by reducing the commutator word to the empty word."""
    g._check(h)
    return commutator_trivial(g.graph.adj, g.letters, h.letters)


def commutator_trivial(adj, a: Sequence[int], b: Sequence[int]) -> bool:
    word = list(a) + list(b) + invert_letters(a) + invert_letters(b)
    return not reduce_letters(adj, word)


def cyclic_reduce(g: GroupElement) -> tuple[GroupElement, GroupElement]:
    """Return ``(c, core)`` with ``g = c^-1 core c`` and ``core`` cyclically reduced.

    Peels a letter ``x`` off the front together with ``x^-1`` off the back while
    both can be commuted into place.
    """
    adj = g.graph.adj
    letters = list(g.letters)
    peeled = []  # x's removed, outermost first
    while True:
        backs = {letters[k]: k for k in back_letters(adj, letters)}
        hit = None
        for k in front_letters(adj, letters):
            if letters[k] ^ 1 in backs and backs[letters[k] ^ 1] != k:
                hit = (k, backs[letters[k] ^ 1])
                break
        if hit is None:
            break
        peeled.append(letters[hit[0]])
        letters = [x for k, x in enumerate(letters) if k not in hit]
    core = GroupElement(g.graph, letters)
    # g = x1 x2 .. core .. x2^-1 x1^-1, so c = (x1 x2 ..)^-1
    conj = GroupElement(g.graph, invert_letters(peeled))
    return conj, core


def is_cyclically_reduced(g: GroupElement) -> bool:
    return len(cyclic_reduce(g)[1]) == len(g)


def centralizes(g: GroupElement, v: str) -> bool:
    """Membership ``g ∈ Z(v)`` by the commutation test."""
    return commutes(g, GroupElement.generator(g.graph, v))
