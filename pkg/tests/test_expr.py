import json

import pytest

from raagcoh.coherence import INF, CoherencePair
from raagcoh.complex import InputError, SimplicialComplex, complex_to_json, cycle, full_subcomplex, simplex
from raagcoh.corpus import example_complex
from raagcoh.expr import (AmalgamOverRaag, Assumed, DirectProduct, Extension, ExprSyntaxError, Free, FreeAbelian,
                          GraphOfGroups, Raag, Trivial, parse_expr)


@pytest.fixture
def files(tmp_path):
    def write(name, L):
        (tmp_path / name).write_text(json.dumps(complex_to_json(L)))
    write("c4.json", cycle(4))
    write("example.json", example_complex())
    write("edge.json", full_subcomplex(cycle(4), ["c0", "c1"]))
    write("hollow.json", SimplicialComplex.from_facets("abc", [["a", "b"], ["b", "c"], ["a", "c"]]))
    write("tri.json", simplex(["x", "y", "z"]))
    return tmp_path


def test_basic_constructors():
    assert parse_expr("prod(F(2),F(2))") == DirectProduct((Free(2), Free(2)))
    assert parse_expr(" 1 ") == Trivial()
    assert parse_expr("Z") == FreeAbelian(1)
    assert parse_expr("Z^3") == FreeAbelian(3)
    assert parse_expr("ext(Z^2, F(3))") == Extension(FreeAbelian(2), Free(3))
    assert parse_expr("gog([F(2), Z], [Z])") == GraphOfGroups((Free(2), FreeAbelian(1)), (FreeAbelian(1),))


def test_assume():
    e = parse_expr("assume(G, {pos(1,inf), neg(2,3), fin(4)})")
    assert e == Assumed("G", (CoherencePair(1, INF),), (CoherencePair(2, 3),), 4)
    assert parse_expr(str(e)) == e


def test_raag_file(files):
    e = parse_expr("raag(example.json)", files)
    assert isinstance(e, Raag) and e.complex == example_complex()


def test_amalgam(files):
    e = parse_expr("amalgam(raag(c4.json), raag(c4.json), over=edge.json)", files)
    assert isinstance(e, AmalgamOverRaag)
    assert e.edge_group.complex.n == 2


def test_amalgam_edge_not_full(files):
    # c0 and c2 are not adjacent in C4, so an edge complex joining them is not full
    (files / "fake.json").write_text(json.dumps({"format": "flag-graph", "vertices": ["c0", "c2"],
                                                 "edges": [["c0", "c2"]]}))
    with pytest.raises(InputError, match="not a full subcomplex"):
        parse_expr("amalgam(raag(c4.json), raag(c4.json), over=fake.json)", files)
    with pytest.raises(InputError, match="outside"):
        parse_expr("amalgam(raag(c4.json), raag(tri.json), over=edge.json)", files)


def test_non_flag_rejected(files):
    with pytest.raises(InputError, match="not flag"):
        parse_expr("raag(hollow.json)", files)


def test_syntax_error_location():
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr("prod(F(2),\n  Q)")
    assert (info.value.line, info.value.col) == (2, 3)
    with pytest.raises(ExprSyntaxError):
        parse_expr("F(2) F(2)")
    with pytest.raises(ExprSyntaxError):
        parse_expr("assume(G, {pos(2,1)})")
    with pytest.raises(ExprSyntaxError):
        parse_expr("gog([], [])")


def test_missing_file(files):
    with pytest.raises(InputError):
        parse_expr("raag(nope.json)", files)
