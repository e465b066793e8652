"""Small named complexes used by the demos and the test-suite."""

from __future__ import annotations

from .complex import (Graph, SimplicialComplex, cone, cycle, disjoint_union, from_graph, join, simplex,
                      sphere0, suspend)


def octahedron() -> SimplicialComplex:
    return join(join(sphere0(("a0", "a1")), sphere0(("b0", "b1"))), sphere0(("c0", "c1")))


def example_complex() -> SimplicialComplex:
    """S⁰ * S⁰ * (Δ² ⊔ Δ⁰): A_L ≅ F₂ × F₂ × (ℤ³ ∗ ℤ)."""
    return join(join(sphere0(("a0", "a1")), sphere0(("b0", "b1"))),
                disjoint_union(simplex(["x", "y", "z"]), simplex(["w"])))


def sphere_suspension(k: int) -> SimplicialComplex:
    """The k-fold join of S⁰, a flag (k-1)-sphere."""
    L = sphere0(("p0", "q0"))
    for i in range(1, k):
        L = join(L, sphere0((f"p{i}", f"q{i}")))
    return L


def path(m: int) -> SimplicialComplex:
    names = [f"v{i}" for i in range(m)]
    return from_graph(Graph.from_edges(names, [[names[i], names[i + 1]] for i in range(m - 1)]))


def rp2() -> SimplicialComplex:
    """Six-vertex real projective plane (not flag)."""
    faces = [[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 2],
             [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4]]
    names = [str(i) for i in range(1, 7)]
    return SimplicialComplex.from_facets(names, [[str(v) for v in f] for f in faces])


def flag_corpus() -> dict[str, SimplicialComplex]:
    return {
        "empty": SimplicialComplex.from_facets([], []),
        "point": simplex(["p"]),
        "triangle": simplex(["x", "y", "z"]),
        "simplex4": simplex(4),
        "two_points": sphere0(),
        "path4": path(4),
        "c4": cycle(4),
        "c5": cycle(5),
        "c6": cycle(6),
        "octahedron": octahedron(),
        "cone_c5": cone(cycle(5)),
        "suspension_c5": suspend(cycle(5)),
        "c4_join_c4": join(cycle(4, "a"), cycle(4, "b")),
        "example": example_complex(),
        "c4_plus_triangle": disjoint_union(cycle(4), simplex(["x", "y", "z"])),
    }


__all__ = ["example_complex", "flag_corpus", "octahedron", "path", "rp2", "sphere_suspension"]
