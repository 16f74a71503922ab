from __future__ import annotations

import json
from itertools import combinations
from fractions import Fraction
from pathlib import Path

import networkx as nx
import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from raag_atlas.atlas import enumerate_graphs
from raag_atlas.certificates import (
    PathWitness,
    best_upper_bound,
    build_len2,
    build_minlox,
    certificate_from_dict,
    certificate_to_json,
    diam3_star_edge,
    find_star_edge_constructive,
    find_star_edge_scan,
    is_loxodromic,
    qualifying_star_edges,
    star_edge_qualifies,
    subjoin_oracle,
    verify_certificate,
    verify_path_certificate,
    verified_path_length,
    zigzag_path,
)
from raag_atlas.errors import InputError, PreconditionError
from raag_atlas.families import gamma_n, named_examples
from raag_atlas.graphs import (
    complement,
    cycle_graph,
    diameter,
    distance,
    dominates,
    induced,
    is_biconnected,
    is_connected,
    path_graph,
    star,
)
from raag_atlas.words import GroupElement, commutes, equals, reduce

from conftest import biconnected_graphs

GOLDENS = Path(__file__).parent / "goldens"
P4 = path_graph(4)
P6 = path_graph(6)


def el(word, g=P4):
    return reduce(g, word)


# -- loxodromicity ----------------------------------------------------------------

def test_is_loxodromic_examples():
    ev = is_loxodromic(P4, el("v2 v1 v3 v3 v2 v4"))
    assert ev.verdict and ev.support == set(P4.vertices)
    assert not is_loxodromic(P4, el("v1"))
    assert not is_loxodromic(P4, el("v2 v3"))


def test_is_loxodromic_uses_cyclic_core():
    g = el("v2 v1 v3 v3 v2 v4")
    h = el("v1 v3^-1")
    assert is_loxodromic(P4, g.conjugate(h)).verdict


def test_is_loxodromic_errors():
    with pytest.raises(PreconditionError):
        is_loxodromic(path_graph(3), reduce(path_graph(3), "v1"))
    with pytest.raises(InputError):
        is_loxodromic(P4, GroupElement.identity(P4))


def test_subjoin_oracle_examples():
    assert subjoin_oracle(P4, ["v1", "v2"])
    assert not subjoin_oracle(P4, P4.vertices)
    with pytest.raises(InputError):
        subjoin_oracle(P4, [])


def _subjoin_nx(g, s):
    # independent reading: some W ⊇ s with |W| >= 2 induces a join
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    h = nx.complement(h)
    rest = [v for v in g.vertices if v not in s]
    for r in range(len(rest) + 1):
        for more in combinations(rest, r):
            w = set(s) | set(more)
            if len(w) >= 2 and not nx.is_connected(h.subgraph(w)):
                return True
    return False


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(biconnected_graphs(4, 6), st.data())
def test_subjoin_oracle_matches_criterion(g, data):
    s = data.draw(st.sets(st.sampled_from(g.vertices), min_size=1))
    cg = complement(g)
    criterion = is_connected(induced(cg, s)) and dominates(cg, s, g.vertices)
    assert subjoin_oracle(g, s) == _subjoin_nx(g, s) == (not criterion)


# -- star-edges ----------------------------------------------------------------

def test_star_edge_goldens_byte_stable():
    examples = named_examples()
    got = {name: [list(e) for e in qualifying_star_edges(examples[name])] for name in ("c5", "fig3b", "p6")}
    text = json.dumps(got, indent=2, sort_keys=True) + "\n"
    assert text == (GOLDENS / "star_edges.json").read_text()


def test_star_edge_scan_examples():
    assert find_star_edge_scan(P6) == ("v2", "v3")
    assert find_star_edge_scan(P4) == ("v2", "v3")
    assert qualifying_star_edges(P4) == [("v2", "v3")]
    assert find_star_edge_constructive(P4) == ("v2", "v3")
    assert star_edge_qualifies(cycle_graph(5), ("v1", "v5"))
    with pytest.raises(PreconditionError):
        find_star_edge_scan(path_graph(3))


def test_fig3b_shape():
    g = named_examples()["fig3b"]
    assert len(g) == 7 and g.edge_count() == 10


def test_diam3_star_edge_examples():
    assert diam3_star_edge(P6) == ("v2", "v3")
    assert star_edge_qualifies(P6, diam3_star_edge(P6))
    e = diam3_star_edge(P4)
    assert distance(complement(P4), *e) >= 3
    assert star(P4, e) == set(P4.vertices)
    with pytest.raises(PreconditionError):
        diam3_star_edge(cycle_graph(5))


def test_constructive_lies_in_scan_set_up_to_iso_6():
    for n in range(4, 7):
        for g in enumerate_graphs(n, dedupe_iso=True):
            if not is_biconnected(g):
                continue
            quals = qualifying_star_edges(g)
            assert quals
            assert find_star_edge_constructive(g) in quals
            if diameter(g) >= 3 or diameter(complement(g)) >= 3:
                e = diam3_star_edge(g)
                assert e in quals


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(biconnected_graphs(7, 8))
def test_constructive_lies_in_scan_set_random(g):
    assert find_star_edge_constructive(g) in qualifying_star_edges(g)


# -- path certificates ---------------------------------------------------------------

def test_build_len2_p4():
    cert = build_len2(P4, ("v2", "v3"))
    assert equals(cert.element, el("v2 v1 v3 v3 v2 v4"))
    assert cert.bound == 2 and cert.kind == "path" and cert.valid
    assert cert.element.support() == set(P4.vertices)


def test_build_len2_rejects_bad_edge():
    with pytest.raises(PreconditionError):
        build_len2(P6, ("v1", "v2"))
    with pytest.raises(InputError):
        build_len2(P6, ("v1", "v3"))


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(biconnected_graphs(4, 7))
def test_len2_support_is_star_of_edge(g):
    e = find_star_edge_scan(g)
    cert = build_len2(g, e)
    assert cert.element.support() == star(g, e)
    assert verify_path_certificate(cert, 2)


def test_verify_path_certificate_p4():
    cert = build_len2(P4, ("v2", "v3"))
    assert verify_path_certificate(cert, 3)
    assert len(zigzag_path(cert.witness, 3)) == 7
    assert verify_path_certificate(cert, 1)
    with pytest.raises(InputError):
        verify_path_certificate(cert, 0)


def test_verify_path_certificate_tampered():
    cert = build_len2(P4, ("v2", "v3"))
    w = cert.witness
    bad = PathWitness(w.v1, w.v2, w.g1, el("v1"))
    tampered = type(cert)(cert.graph, cert.element, cert.bound, bad)
    assert not verify_path_certificate(tampered, 1)
    assert verified_path_length(tampered, 3) == 0


def test_zigzag_prefix_lengths():
    cert = build_len2(P4, ("v2", "v3"))
    assert verified_path_length(cert, 4) == 4


# -- factor certificates --------------------------------------------------------------

def test_build_minlox_spec_pair():
    cert = build_minlox(P4, P4.vertices, pair=("v3", "v2"))
    w = cert.witness
    assert w.levels == (("v3",), ("v1",), ("v4",), ("v2",))
    assert str(cert.element) == "v3 v1 v4 v2"
    assert (str(w.h0), str(w.hd)) == ("v3 v1", "v4 v2")
    assert equals(w.h0 * w.hd, cert.element)
    assert cert.bound == 2 and w.d == 3


def test_build_minlox_default_pair_is_least():
    w = build_minlox(P4, P4.vertices).witness
    assert (w.v0, w.vd) == ("v2", "v3")


def test_build_minlox_preconditions():
    with pytest.raises(PreconditionError, match="connected"):
        build_minlox(P4, ["v1", "v2"])
    with pytest.raises(PreconditionError, match="dominate"):
        # complement is P6; its first four vertices form a P4 that misses v6
        build_minlox(complement(P6), ["v1", "v2", "v3", "v4"])
    c5 = cycle_graph(5)
    with pytest.raises(PreconditionError, match="diameter"):
        build_minlox(c5, c5.vertices)
    with pytest.raises(PreconditionError):
        build_minlox(P4, P4.vertices, pair=("v1", "v4"))


def test_far_levels_commute():
    cert = best_upper_bound(gamma_n(8))
    w = cert.witness
    g = cert.graph
    gk = [reduce(g, [(v, 1) for v in lv]) for lv in w.levels]
    for i in range(len(gk)):
        for j in range(i + 2, len(gk)):
            assert commutes(gk[i], gk[j])


def test_gamma_n_bounds():
    for n in range(4, 11):
        cert = best_upper_bound(gamma_n(n))
        assert cert.bound <= Fraction(2, n - 3)
        assert cert.kind == "factor" and cert.witness.sub_lambda


@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(biconnected_graphs(4, 8).filter(lambda g: diameter(complement(g)) >= 3))
def test_minlox_identity_random(g):
    cert = build_minlox(g, g.vertices)
    w = cert.witness
    assert equals(w.h0 * w.hd, cert.element ** (w.d - 2))
    assert cert.valid


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(biconnected_graphs(4, 7))
def test_best_upper_bound_is_valid(g):
    cert = best_upper_bound(g)
    assert cert.valid and cert.bound <= 2
    d = diameter(complement(g))
    if d >= 3:
        assert cert.bound <= Fraction(2, d - 2)


# -- serialization --------------------------------------------------------------------

def test_certificate_goldens_byte_stable():
    assert certificate_to_json(best_upper_bound(P4)) + "\n" == (GOLDENS / "p4_certificate.json").read_text()
    assert certificate_to_json(build_len2(P4, ("v2", "v3"))) + "\n" == \
        (GOLDENS / "p4_len2_certificate.json").read_text()


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(biconnected_graphs(4, 7))
def test_certificate_round_trip(g):
    cert = best_upper_bound(g)
    data = json.loads(certificate_to_json(cert))
    back = certificate_from_dict(data)
    assert back.element == cert.element and back.bound == cert.bound and back.witness == cert.witness
    ok, checks = verify_certificate(data)
    assert ok, checks


def _tamper(data, path, value):
    data = json.loads(json.dumps(data))
    node = data
    for key in path[:-1]:
        node = node[key]
    node[path[-1]] = value
    return data


@pytest.mark.parametrize("path,value,failed", [
    (("bound", "num"), 1, "bound_matches_witness"),
    (("witness", "h0"), "v2", "h0_hd_equals_power"),
    (("witness", "hd"), "v4 v3", "hd_centralizes_v0"),
    (("witness", "vd"), "v4", "edge_in_graph"),
    (("element_word",), "v2 v3", "loxodromic"),
])
def test_tampered_factor_certificate_rejected(path, value, failed):
    data = json.loads((GOLDENS / "p4_certificate.json").read_text())
    assert verify_certificate(data)[0]
    ok, checks = verify_certificate(_tamper(data, path, value))
    assert not ok and not checks[failed]


def test_tampered_path_certificate_rejected():
    data = json.loads((GOLDENS / "p4_len2_certificate.json").read_text())
    ok, checks = verify_certificate(_tamper(data, ("witness", "g2"), "v1 v2"))
    assert not ok and not checks["g2_centralizes_v2"]


def test_malformed_certificate():
    with pytest.raises(InputError):
        verify_certificate({"graph": {}})
    data = json.loads((GOLDENS / "p4_len2_certificate.json").read_text())
    with pytest.raises(InputError):
        verify_certificate(_tamper(data, ("kind",), "spiral"))
