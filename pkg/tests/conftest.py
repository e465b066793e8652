"""Shared generators and independent oracles for the test-suite."""

from __future__ import annotations

import random
from itertools import combinations

import sympy
from hypothesis import strategies as st

from raagcoh.complex import Graph, from_graph


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    names = [f"v{i}" for i in range(n)]
    edges = [[names[i], names[j]] for i, j in combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(names, edges)


def graph_from_bits(n: int, bits: int) -> Graph:
    """The graph on n vertices whose edge set is encoded by ``bits`` over all pairs in lex order."""
    names = [str(i) for i in range(n)]
    pairs = list(combinations(range(n), 2))
    return Graph.from_edges(names, [[names[i], names[j]] for k, (i, j) in enumerate(pairs) if bits >> k & 1])


@st.composite
def flag_complexes(draw, max_vertices: int = 7, min_vertices: int = 0):
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = list(combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    names = [f"v{i}" for i in range(n)]
    return from_graph(Graph.from_edges(names, [[names[i], names[j]] for (i, j), k in zip(pairs, keep) if k]))


# ---------------------------------------------------------------------------
# brute-force oracles


def has_induced_long_cycle(g: Graph) -> bool:
    """Exhaustive: some vertex subset of size ≥ 4 induces a connected 2-regular graph."""
    n = g.n
    adj = [[g.has_edge(u, v) for v in range(n)] for u in range(n)]
    for size in range(4, n + 1):
        for sub in combinations(range(n), size):
            if any(sum(adj[u][v] for v in sub) != 2 for u in sub):
                continue
            seen = {sub[0]}
            stack = [sub[0]]
            while stack:
                u = stack.pop()
                for v in sub:
                    if adj[u][v] and v not in seen:
                        seen.add(v)
                        stack.append(v)
            if len(seen) == size:
                return True
    return False


def all_simplices(L):
    """Every nonempty simplex as a sorted index tuple, grouped by dimension."""
    faces = set()
    for f in L.facets:
        idx = [i for i in range(L.n) if f >> i & 1]
        for k in range(1, len(idx) + 1):
            faces.update(combinations(idx, k))
    by_dim = {}
    for s in faces:
        by_dim.setdefault(len(s) - 1, []).append(s)
    return {k: sorted(v) for k, v in by_dim.items()}


def dense_boundary(L, k: int) -> sympy.Matrix:
    simp = all_simplices(L)
    rows, cols = simp.get(k - 1, []), simp.get(k, [])
    index = {s: i for i, s in enumerate(rows)}
    M = sympy.zeros(len(rows), len(cols))
    for j, s in enumerate(cols):
        for i in range(len(s)):
            M[index[s[:i] + s[i + 1:]], j] = (-1) ** i
    return M


def oracle_reduced_homology(L):
    """(reduced Betti numbers, torsion per degree) from dense sympy linear algebra."""
    from sympy.matrices.normalforms import smith_normal_form

    simp = all_simplices(L)
    top = max(simp) if simp else -1
    counts = [len(simp.get(k, [])) for k in range(top + 1)]
    ranks = [0] * (top + 2)
    torsion = [[] for _ in range(top + 1)]
    for k in range(1, top + 1):
        M = dense_boundary(L, k)
        if M.rows and M.cols:
            ranks[k] = M.rank()
            snf = smith_normal_form(M, domain=sympy.ZZ)
            diag = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
            torsion[k - 1] = sorted(d for d in diag if d > 1)
    # augmentation: rank 1 whenever there is a vertex
    aug = 1 if counts and counts[0] else 0
    reduced = []
    for k in range(top + 1):
        below = ranks[k] if k > 0 else aug
        reduced.append(counts[k] - below - ranks[k + 1])
    return reduced, torsion


# ---------------------------------------------------------------------------
# acceptance summary: one line per criterion at the end of the run

ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for num in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[num])
