from __future__ import annotations

from fractions import Fraction

import pytest

from raag_atlas.certificates import best_upper_bound, qualifying_star_edges
from raag_atlas.errors import InputError
from raag_atlas.families import fig3b, gamma_n, lambda_n, named_examples
from raag_atlas.graphs import (
    complement,
    cycle_graph,
    diameter,
    dominates,
    induced,
    is_biconnected,
    path_graph,
)


def pn_labels(n):
    return [f"v{k}" for k in range(1, n + 1)]


def test_lambda_3_is_pentagon():
    assert lambda_n(3) == cycle_graph(["x", "v1", "v2", "v3", "y"])
    assert induced(lambda_n(3), pn_labels(3)) == path_graph(3)


def test_lambda_7_neighbourhoods():
    g = lambda_n(7)
    assert set(g.neighbors("x")) == {f"v{k}" for k in range(2, 8)}
    assert set(g.neighbors("y")) == {"v1", "v4", "v5", "v6", "v7"}


@pytest.mark.parametrize("n", range(3, 31))
def test_lambda_n_clauses(n):
    g = lambda_n(n)
    cg = complement(g)
    assert is_biconnected(g)
    assert len(g) == n + 2
    assert diameter(g) == diameter(cg) == 2
    pn = pn_labels(n)
    assert induced(g, pn) == path_graph(n)
    assert dominates(g, pn, g.vertices) and dominates(cg, pn, g.vertices)


@pytest.mark.parametrize("n", range(4, 11))
def test_gamma_n(n):
    g = gamma_n(n)
    assert complement(g) == lambda_n(n)
    assert len(g) == n + 2 and is_biconnected(g)
    assert diameter(g) == diameter(complement(g)) == 2
    assert induced(complement(g), pn_labels(n)) == path_graph(n)


def test_gamma_7_bound():
    assert best_upper_bound(gamma_n(7)).bound <= Fraction(1, 2)


def test_family_ranges():
    with pytest.raises(InputError):
        lambda_n(2)
    with pytest.raises(InputError):
        gamma_n(3)


def test_named_examples():
    ex = named_examples()
    assert set(ex) == {"p6", "fig3b", "c5", "p4"}
    assert ex["fig3b"] == fig3b()
    assert len(fig3b()) == 7 and fig3b().edge_count() == 10
    assert len(qualifying_star_edges(ex["c5"])) == 5
