import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import flag_complexes, graph_from_bits, has_induced_long_cycle, random_graph
from raagcoh.bits import full_mask, mask_of
from raagcoh.chordal import (T1Certificate, find_induced_cycle, is_chordal, lex_bfs, minimal_ab_separators,
                             minimal_separators, t1_certify, verify_induced_cycle, verify_peo,
                             verify_t1_certificate)
from raagcoh.complex import (Graph, InputError, SimplicialComplex, components, cone, cycle, from_graph,
                             maximalize, simplex)
from raagcoh.corpus import example_complex, path


def complete(n):
    names = [str(i) for i in range(n)]
    return Graph.from_edges(names, [[a, b] for a, b in combinations(names, 2)])


def test_c4_not_chordal():
    g = cycle(4).graph
    r = is_chordal(g)
    assert not r.chordal
    assert sorted(r.cycle) == [0, 1, 2, 3]
    assert verify_induced_cycle(g, r.cycle)


def test_complete_graph_chordal():
    for n in range(1, 7):
        r = is_chordal(complete(n))
        assert r.chordal and verify_peo(complete(n), r.order)


def test_lex_bfs_ties_least_index():
    g = path(4).graph
    assert lex_bfs(g.adj, g.mask) == [0, 1, 2, 3]


def test_witness_checkers_reject_bad_input():
    g = cycle(5).graph
    assert not verify_induced_cycle(g, [0, 1, 2])
    assert not verify_induced_cycle(g, [0, 1, 2, 4])
    assert not verify_peo(g, [0, 1, 2, 3, 4])


def test_find_induced_cycle_none_on_chordal():
    g = from_graph(complete(5)).graph
    assert find_induced_cycle(g.adj, g.mask) is None


def test_random_graphs_against_brute_force():
    rng = random.Random(11)
    for _ in range(300):
        g = random_graph(rng, rng.randint(0, 8), rng.choice([0.3, 0.5, 0.7]))
        r = is_chordal(g)
        assert r.chordal == (not has_induced_long_cycle(g))
        assert verify_peo(g, r.order) if r.chordal else verify_induced_cycle(g, r.cycle)


def test_against_networkx():
    rng = random.Random(3)
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 10))
        G = nx.Graph()
        G.add_nodes_from(range(g.n))
        G.add_edges_from(g.edges())
        assert is_chordal(g).chordal == nx.is_chordal(G)


# -- separators ------------------------------------------------------------


def brute_minimal_separators(g: Graph) -> set[int]:
    base = len(components(g.adj, g.mask))
    seps = [s for s in range(1, 1 << g.n) if len(components(g.adj, g.mask & ~s)) > base]
    return {s for s in seps if not any(t != s and t & ~s == 0 for t in seps)}


def test_path_separator():
    g = Graph.from_edges("abc", [["a", "b"], ["b", "c"]])
    assert minimal_separators(g).separators == (0b010,)


def test_c4_separators():
    g = cycle(4).graph
    assert set(minimal_separators(g).separators) == {0b0101, 0b1010}
    assert set(minimal_separators(g).separators) == brute_minimal_separators(g)


def test_complete_graph_has_no_separators():
    assert minimal_separators(complete(5)).separators == ()


def test_separators_against_brute_force():
    rng = random.Random(5)
    for _ in range(150):
        g = random_graph(rng, rng.randint(1, 7))
        got = minimal_separators(g)
        assert not got.truncated
        assert set(got.separators) == brute_minimal_separators(g)
        assert list(got.separators) == sorted(got.separators, key=lambda s: [i for i in range(g.n) if s >> i & 1])


def test_ab_separators_budget_truncates():
    g = cycle(8).graph
    full = minimal_ab_separators(g.adj, g.mask)
    assert len(full.separators) > 3 and not full.truncated
    cut = minimal_ab_separators(g.adj, g.mask, budget=3)
    assert cut.truncated and len(cut.separators) == 3


# -- T1 --------------------------------------------------------------------


def reassemble(cert: T1Certificate) -> list[int]:
    return sorted(f for f in maximalize(cert.leaves()) if f)


def test_simplex_single_leaf():
    L = simplex(4)
    r = t1_certify(L)
    assert r.certified and r.certificate.is_leaf


def test_c4_refuted():
    L = cycle(4)
    r = t1_certify(L)
    assert not r.certified
    assert sorted(r.cycle) == [0, 1, 2, 3]


def test_t1_requires_flag():
    hollow = SimplicialComplex.from_facets("abc", [["a", "b"], ["b", "c"], ["a", "c"]])
    with pytest.raises(InputError):
        t1_certify(hollow)


def test_t1_refutes_example():
    r = t1_certify(example_complex())
    assert not r.certified
    assert verify_induced_cycle(example_complex().graph, r.cycle)


def test_certificate_dict_round_trip():
    L = cone(path(5))
    cert = t1_certify(L).certificate
    assert T1Certificate.from_dict(cert.to_dict(L), L) == cert
    assert verify_t1_certificate(cert, L)


def test_certificate_corruptions_rejected():
    L = from_graph(Graph.from_edges("abcde", [["a", "b"], ["b", "c"], ["c", "d"], ["b", "d"], ["d", "e"]]))
    cert = t1_certify(L).certificate
    assert verify_t1_certificate(cert, L)
    bad_root = T1Certificate(cert.vertices & ~1, cert.separator, cert.left, cert.right)
    assert not verify_t1_certificate(bad_root, L)
    bad_sep = T1Certificate(cert.vertices, cert.separator ^ (1 << 4), cert.left, cert.right)
    assert not verify_t1_certificate(bad_sep, L)
    fake_leaf = T1Certificate(L.mask)
    assert not verify_t1_certificate(fake_leaf, L)


@settings(max_examples=80, deadline=None)
@given(flag_complexes(max_vertices=8))
def test_droms_equivalence_and_reassembly(L):
    r = t1_certify(L)
    assert r.certified == is_chordal(L.graph).chordal
    if r.certified:
        assert verify_t1_certificate(r.certificate, L)
        assert reassemble(r.certificate) == sorted(L.facets)
    else:
        assert verify_induced_cycle(L.graph, r.cycle)


def test_droms_exhaustive_five_vertices():
    for bits in range(1 << 10):
        g = graph_from_bits(5, bits)
        assert is_chordal(g).chordal == t1_certify(from_graph(g)).certified


def test_full_mask_helper():
    assert full_mask(3) == mask_of([0, 1, 2]) == 7
