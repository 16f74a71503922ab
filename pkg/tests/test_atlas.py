from __future__ import annotations

import json
from itertools import combinations

import networkx as nx
import pytest

from raag_atlas import atlas
from raag_atlas.atlas import (
    canonical_codes,
    code_of,
    enumerate_graphs,
    graph_from_code,
    sweep_certify,
    sweep_loxo_equiv,
    sweep_theorem_2v,
)
from raag_atlas.errors import InputError
from raag_atlas.graphs import is_biconnected, path_graph


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def test_enumeration_counts():
    assert sum(1 for _ in enumerate_graphs(4)) == 64
    assert sum(1 for _ in enumerate_graphs(4, dedupe_iso=True)) == 11
    bic = [g for g in enumerate_graphs(4) if is_biconnected(g)]
    assert len(bic) == 12
    reps = [g for g in enumerate_graphs(4, dedupe_iso=True) if is_biconnected(g)]
    assert len(reps) == 1 and nx.is_isomorphic(to_nx(reps[0]), to_nx(path_graph(4)))


@pytest.mark.parametrize("n,classes", [(1, 1), (2, 2), (3, 4), (5, 34), (6, 156)])
def test_isomorphism_class_counts(n, classes):
    reps = list(enumerate_graphs(n, dedupe_iso=True))
    assert len(reps) == classes


def test_iso_representatives_pairwise_distinct_5():
    reps = [to_nx(g) for g in enumerate_graphs(5, dedupe_iso=True)]
    for a, b in combinations(reps, 2):
        if a.number_of_edges() == b.number_of_edges():
            assert not nx.is_isomorphic(a, b)


def test_code_order_and_round_trip():
    graphs = list(enumerate_graphs(4))
    assert [code_of(g) for g in graphs] == list(range(64))
    assert graph_from_code(4, 0b000111) == graphs[7]
    assert set(graph_from_code(4, 1).edges) == {("v1", "v2")}


def test_range_errors():
    with pytest.raises(InputError):
        list(enumerate_graphs(0))
    with pytest.raises(InputError):
        list(enumerate_graphs(9))
    with pytest.raises(InputError):
        canonical_codes(8)
    with pytest.raises(InputError):
        sweep_theorem_2v(3, 5)
    with pytest.raises(InputError):
        sweep_loxo_equiv(7)
    with pytest.raises(InputError):
        sweep_certify(4, 8)


def test_sweep_2v_small():
    r = sweep_theorem_2v(4, 6)
    assert r.passed and r.failures == []
    assert r.counters[4] == {"graphs_scanned": 64, "biconnected": 12}
    assert r.counters[5]["biconnected"] == 432
    assert r.counter("graphs_scanned") == 64 + 1024 + 32768


def test_sweep_2v_counts_match_direct_filter():
    r = sweep_theorem_2v(5, 5)
    assert r.counters[5]["biconnected"] == sum(is_biconnected(g) for g in enumerate_graphs(5))


def test_sweeps_are_deterministic_across_workers(monkeypatch):
    monkeypatch.setattr(atlas, "BLOCK", 1 << 8)
    one = sweep_theorem_2v(4, 5, jobs=1)
    two = sweep_theorem_2v(4, 5, jobs=2)
    again = sweep_theorem_2v(4, 5, jobs=1)
    assert one.to_json() == two.to_json() == again.to_json()
    assert one.to_csv() == two.to_csv()


def test_loxo_sweep_p4_and_skips():
    r = sweep_loxo_equiv(4)
    c = r.counters[4]
    assert r.passed
    assert c["biconnected"] == 12 and c["subsets_compared"] == 12 * 15
    assert c["skipped"] == 64 - 12


def test_certify_sweep_small():
    r = sweep_certify(4, 5)
    assert r.passed
    assert r.counters[4]["minlox_identity_checked"] == 12


def test_report_serialization():
    r = sweep_theorem_2v(4, 4)
    data = json.loads(r.to_json())
    assert data["passed"] and data["counters"]["4"]["biconnected"] == 12
    assert "wall_time" not in data and "wall_time" in r.to_dict(include_time=True)
    assert r.to_csv().splitlines() == ["kind,n,biconnected,graphs_scanned,failures", "star-edge,4,12,64,0"]
