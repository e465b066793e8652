import json
import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import all_simplices, flag_complexes, random_graph
from raagcoh.bits import full_mask, lex_key, mask_of
from raagcoh.complex import (Graph, InputError, SimplicialComplex, cone, connected_components, complex_to_json,
                             cycle, disjoint_union, dominating_vertices, from_graph, full_subcomplex,
                             graph_to_json, join, load_complex, parse_complex, simplex, sphere0, suspend)
from raagcoh.corpus import example_complex, octahedron


def facet_labels(L):
    return sorted(sorted(L.labels(f)) for f in L.facets)


def test_triangle_graph_is_one_simplex():
    g = Graph.from_edges("abc", [["a", "b"], ["b", "c"], ["a", "c"]])
    L = from_graph(g)
    assert facet_labels(L) == [["a", "b", "c"]]
    assert L.dim == 2 and L.is_flag


def test_c4_has_no_triangles():
    L = cycle(4)
    assert L.f_vector() == (4, 4)
    assert L.dim == 1


def test_octahedron_facets_match_networkx_cliques():
    L = octahedron()
    assert len(L.facets) == 8
    g = nx.Graph([(L.vertices[u], L.vertices[v]) for u, v in L.graph.edges()])
    assert facet_labels(L) == sorted(sorted(c) for c in nx.find_cliques(g))
    assert L.f_vector() == (6, 12, 8)


def test_empty_graph_gives_empty_complex():
    L = from_graph(Graph.from_edges([], []))
    assert L.n == 0 and L.dim == -1 and L.facets == ()


def test_full_subcomplex_of_triangle_edge():
    L = simplex(["a", "b", "c"])
    sub = full_subcomplex(L, ["a", "c"])
    assert facet_labels(sub) == [["a", "c"]]


def test_example_suspension_vertices_span_c4():
    L = example_complex()
    sub = full_subcomplex(L, ["a0", "a1", "b0", "b1"])
    assert sub.f_vector() == (4, 4)
    assert sub.graph.complement().edges() == [(0, 1), (2, 3)]


def test_full_subcomplex_unknown_vertex():
    with pytest.raises(InputError):
        full_subcomplex(cycle(4), ["c0", "zz"])


def test_join_identities():
    L = cycle(5)
    empty = SimplicialComplex.from_facets([], [])
    assert join(L, empty) == L
    c4 = join(sphere0(("a", "b")), sphere0(("c", "d")))
    assert c4.f_vector() == (4, 4) and c4.dim == 1
    ex = example_complex()
    assert ex.n == 8 and ex.dim == 4


def test_join_label_collision():
    with pytest.raises(InputError):
        join(cycle(4), cycle(4))


def test_dominating_vertices():
    assert dominating_vertices(simplex(["a", "b", "c"])) == [0, 1, 2]
    assert dominating_vertices(cycle(4)) == []
    L = cone(cycle(4))
    assert [L.vertices[i] for i in dominating_vertices(L)] == ["apex"]


def test_connected_components():
    L = disjoint_union(simplex(["x", "y", "z"]), simplex(["w"]))
    comps = connected_components(L)
    assert [bin(c).count("1") for c in comps] == [3, 1]
    assert len(connected_components(cycle(6))) == 1
    assert connected_components(SimplicialComplex.from_facets([], [])) == []


def test_cone_and_suspension_are_joins():
    L = cycle(5)
    assert cone(L) == join(L, simplex(["apex"]))
    assert suspend(L) == join(L, sphere0(("N", "S")))


def test_graph_validation():
    with pytest.raises(InputError):
        Graph.from_edges("ab", [["a", "a"]])
    with pytest.raises(InputError):
        Graph.from_edges("ab", [["a", "q"]])
    with pytest.raises(InputError):
        Graph.from_edges(["a", "a"], [])


def test_vertex_limit():
    names = [f"v{i}" for i in range(65)]
    with pytest.raises(InputError):
        Graph.from_edges(names, [])


def test_non_flag_detection():
    hollow = SimplicialComplex.from_facets("abc", [["a", "b"], ["b", "c"], ["a", "c"]])
    assert not hollow.is_flag
    with pytest.raises(InputError):
        hollow.require_flag()


def test_facets_canonical_order():
    L = SimplicialComplex.from_facets("abcd", [["c", "d"], ["a", "b", "c"], ["b", "d"]])
    keys = [lex_key(f) for f in L.facets]
    assert keys == sorted(keys)


def test_json_round_trip(tmp_path):
    L = example_complex()
    p = tmp_path / "L.json"
    p.write_text(json.dumps(complex_to_json(L)))
    assert load_complex(p) == L
    g = cycle(6).graph
    assert parse_complex(graph_to_json(g)) == cycle(6)


def test_malformed_json_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "format": "complex",\n  "vertices": [1,\n}')
    with pytest.raises(InputError, match=r"bad\.json:4:1"):
        load_complex(p)


def test_bad_format():
    with pytest.raises(InputError):
        parse_complex({"format": "mesh", "vertices": []})
    with pytest.raises(InputError):
        parse_complex({"format": "complex", "vertices": ["a"], "facets": [["b"]]})


@settings(max_examples=60, deadline=None)
@given(flag_complexes(max_vertices=8), st.data())
def test_full_subcomplex_is_induced_clique_complex(L, data):
    sub = data.draw(st.integers(0, full_mask(L.n)))
    got = full_subcomplex(L, sub)
    idx = [i for i in range(L.n) if sub >> i & 1]
    names = [L.vertices[i] for i in idx]
    want = from_graph(Graph.from_edges(names, [[L.vertices[u], L.vertices[v]]
                                               for u, v in combinations(idx, 2) if L.graph.has_edge(u, v)]))
    assert got == want
    assert got.is_flag


@settings(max_examples=60, deadline=None)
@given(flag_complexes(max_vertices=7))
def test_one_skeleton_round_trip(L):
    assert from_graph(L.graph) == L


@settings(max_examples=40, deadline=None)
@given(flag_complexes(max_vertices=5), flag_complexes(max_vertices=4))
def test_join_face_vector_convolution(A, B):
    B = SimplicialComplex.from_facets([f"w{v}" for v in B.vertices],
                                      [[f"w{x}" for x in B.labels(f)] for f in B.facets])
    J = join(A, B)
    assert J.dim == A.dim + B.dim + 1
    fa = (1,) + A.f_vector()
    fb = (1,) + B.f_vector()
    conv = [sum(fa[i] * fb[k - i] for i in range(len(fa)) if 0 <= k - i < len(fb))
            for k in range(len(fa) + len(fb) - 1)]
    assert (1,) + J.f_vector() == tuple(conv)
    assert J.is_flag


def test_face_closure_membership():
    L = example_complex()
    for faces in all_simplices(L).values():
        for s in faces:
            assert L.has_simplex([L.vertices[i] for i in s])
    assert not L.has_simplex(["a0", "a1"])


def test_random_graphs_clique_complex_against_networkx():
    rng = random.Random(7)
    for _ in range(100):
        g = random_graph(rng, rng.randint(1, 9))
        L = from_graph(g)
        G = nx.Graph()
        G.add_nodes_from(range(g.n))
        G.add_edges_from(g.edges())
        want = sorted(lex_key(mask_of(c)) for c in nx.find_cliques(G))
        assert sorted(lex_key(f) for f in L.facets) == want
