from __future__ import annotations

from itertools import combinations

from hypothesis import strategies as st

from raag_atlas.graphs import Graph, is_biconnected


def graph_from_bits(n: int, bits: int) -> Graph:
    labels = [f"v{k}" for k in range(1, n + 1)]
    edges = [(labels[i], labels[j]) for k, (i, j) in enumerate(combinations(range(n), 2)) if bits >> k & 1]
    return Graph(labels, edges)


@st.composite
def graphs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.integers(0, (1 << (n * (n - 1) // 2)) - 1))
    return graph_from_bits(n, bits)


def biconnected_graphs(min_n=4, max_n=7):
    return graphs(max(min_n, 4), max_n).filter(is_biconnected)


@st.composite
def words_over(draw, graph: Graph, max_len=8):
    n = draw(st.integers(0, max_len))
    return [(draw(st.sampled_from(graph.vertices)), draw(st.sampled_from((1, -1)))) for _ in range(n)]


@st.composite
def graph_and_word(draw, min_n=1, max_n=6, max_len=8):
    g = draw(graphs(min_n, max_n))
    return g, draw(words_over(g, max_len))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
