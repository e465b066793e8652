"""Finite graphs, simplicial complexes and flag (clique) complexes.

Complexes are stored by their facets, each facet a bit mask over the
vertex order.  Vertex order is the input order and is never permuted;
facets are kept sorted lexicographically by their index lists so that
equal complexes compare and serialise identically.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

from .bits import MAX_VERTICES, full_mask, indices, iter_bits, lex_key, lowest, mask_of, popcount


class InputError(ValueError):
    """Raised for malformed or semantically invalid input."""


# ---------------------------------------------------------------------------
# mask-level graph helpers; ``adj[v]`` is the neighbour mask of vertex ``v``


def components(adj: Sequence[int], mask: int) -> list[int]:
    """Connected components of the subgraph induced on ``mask``, ordered by least vertex."""
    comps = []
    rest = mask
    while rest:
        start = rest & -rest
        comp = start
        frontier = start
        while frontier:
            v = lowest(frontier)
            frontier &= frontier - 1
            new = adj[v] & rest & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        rest &= ~comp
    return comps


def neighbourhood(adj: Sequence[int], mask: int) -> int:
    """Open neighbourhood of a vertex set (excluding the set itself)."""
    nb = 0
    for v in iter_bits(mask):
        nb |= adj[v]
    return nb & ~mask


def is_clique(adj: Sequence[int], mask: int) -> bool:
    for v in iter_bits(mask):
        if (mask & ~(1 << v)) & ~adj[v]:
            return False
    return True


def maximal_cliques(adj: Sequence[int], mask: int) -> list[int]:
    """Bron–Kerbosch with Tomita pivoting over bit masks.

    Returns every maximal clique of the induced subgraph on ``mask``,
    sorted lexicographically by index tuple.  The empty graph has the
    single maximal clique ``0``.
    """
    if mask == 0:
        return [0]
    out = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(r)
            return
        px = p | x
        pivot = max(iter_bits(px), key=lambda u: popcount(p & adj[u]))
        for v in iter_bits(p & ~adj[pivot]):
            bit = 1 << v
            expand(r | bit, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    expand(0, mask, 0)
    out.sort(key=lex_key)
    return out


def maximalize(masks: Iterable[int]) -> list[int]:
    """Drop masks contained in another one; result sorted lexicographically."""
    uniq = sorted(set(masks), key=lambda m: (-popcount(m), lex_key(m)))
    kept: list[int] = []
    for m in uniq:
        if not any(m & ~k == 0 for k in kept):
            kept.append(m)
    kept.sort(key=lex_key)
    return kept


# ---------------------------------------------------------------------------


def _check_labels(vertices: Sequence[str]) -> tuple[str, ...]:
    labels = tuple(vertices)
    for lab in labels:
        if not isinstance(lab, str):
            raise InputError(f"vertex label {lab!r} is not a string")
    if len(set(labels)) != len(labels):
        seen = set()
        dup = next(v for v in labels if v in seen or seen.add(v))
        raise InputError(f"duplicate vertex label {dup!r}")
    if len(labels) > MAX_VERTICES:
        raise InputError(f"{len(labels)} vertices exceeds the supported maximum of {MAX_VERTICES}")
    return labels


def _resolve(labels: tuple[str, ...], index: dict[str, int], item) -> int:
    if isinstance(item, str):
        try:
            return index[item]
        except KeyError:
            raise InputError(f"unknown vertex label {item!r}") from None
    if isinstance(item, int) and not isinstance(item, bool) and 0 <= item < len(labels):
        return item
    raise InputError(f"unknown vertex {item!r}")


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with labelled vertices.

    ``adj[i]`` is the bit mask of neighbours of vertex ``i``.
    """

    vertices: tuple[str, ...]
    adj: tuple[int, ...]

    def __post_init__(self):
        if len(self.adj) != len(self.vertices):
            raise InputError("adjacency length does not match vertex count")
        for i, nb in enumerate(self.adj):
            if nb >> i & 1:
                raise InputError(f"self-loop at vertex {self.vertices[i]!r}")
            if nb >> len(self.vertices):
                raise InputError("adjacency references a vertex out of range")
            for j in iter_bits(nb):
                if not self.adj[j] >> i & 1:
                    raise InputError("adjacency is not symmetric")

    @classmethod
    def from_edges(cls, vertices: Sequence[str], edges: Iterable[Sequence]) -> Graph:
        labels = _check_labels(vertices)
        index = {v: i for i, v in enumerate(labels)}
        adj = [0] * len(labels)
        for e in edges:
            if len(e) != 2:
                raise InputError(f"edge {e!r} does not have two endpoints")
            u, v = (_resolve(labels, index, x) for x in e)
            if u == v:
                raise InputError(f"self-loop at vertex {labels[u]!r}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(labels, tuple(adj))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def mask(self) -> int:
        return full_mask(self.n)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u]) if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def induced(self, mask: int) -> Graph:
        """Induced subgraph on ``mask``, re-indexed in the original order."""
        keep = indices(mask)
        pos = {v: i for i, v in enumerate(keep)}
        adj = tuple(mask_of(pos[u] for u in iter_bits(self.adj[v] & mask)) for v in keep)
        return Graph(tuple(self.vertices[v] for v in keep), adj)

    def complement(self) -> Graph:
        full = self.mask
        return Graph(self.vertices, tuple(full & ~self.adj[v] & ~(1 << v) for v in range(self.n)))


@dataclass(frozen=True)
class SimplicialComplex:
    """Finite abstract simplicial complex stored by facets.

    Every vertex is a simplex, so vertices not covered by a listed facet
    become singleton facets.  Use :meth:`from_facets` rather than the
    raw constructor.
    """

    vertices: tuple[str, ...]
    facets: tuple[int, ...]

    @classmethod
    def from_facets(cls, vertices: Sequence[str], facets: Iterable[Iterable]) -> SimplicialComplex:
        labels = _check_labels(vertices)
        index = {v: i for i, v in enumerate(labels)}
        masks = []
        for f in facets:
            if isinstance(f, (str, bytes)):
                raise InputError(f"facet {f!r} is not a list of vertices")
            masks.append(mask_of(_resolve(labels, index, x) for x in f))
        return cls._from_masks(labels, masks)

    @classmethod
    def _from_masks(cls, labels: tuple[str, ...], masks: Iterable[int]) -> SimplicialComplex:
        masks = [m for m in masks if m]
        covered = 0
        for m in masks:
            covered |= m
        masks.extend(1 << v for v in iter_bits(full_mask(len(labels)) & ~covered))
        return cls(labels, tuple(maximalize(masks)))

    def __repr__(self):
        fs = ", ".join("{" + ",".join(self.vertices[i] for i in iter_bits(f)) + "}" for f in self.facets)
        return f"SimplicialComplex([{fs}])"

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def mask(self) -> int:
        return full_mask(self.n)

    @cached_property
    def dim(self) -> int:
        return max((popcount(f) for f in self.facets), default=0) - 1

    @cached_property
    def graph(self) -> Graph:
        """The 1-skeleton."""
        adj = [0] * self.n
        for f in self.facets:
            for v in iter_bits(f):
                adj[v] |= f
        return Graph(self.vertices, tuple(a & ~(1 << v) for v, a in enumerate(adj)))

    @cached_property
    def is_flag(self) -> bool:
        return maximal_cliques(self.graph.adj, self.mask) == list(self.facets) or self.n == 0

    @cached_property
    def _simplices(self) -> dict[int, tuple[tuple[int, ...], ...]]:
        by_dim: dict[int, set[tuple[int, ...]]] = {}
        for f in self.facets:
            verts = indices(f)
            for k in range(1, len(verts) + 1):
                by_dim.setdefault(k - 1, set()).update(itertools.combinations(verts, k))
        return {k: tuple(sorted(s)) for k, s in by_dim.items()}

    def simplices(self, k: int) -> tuple[tuple[int, ...], ...]:
        """All ``k``-simplices as increasing index tuples, sorted."""
        return self._simplices.get(k, ())

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.simplices(k)) for k in range(self.dim + 1))

    def has_simplex(self, simplex: Iterable) -> bool:
        index = {v: i for i, v in enumerate(self.vertices)}
        m = mask_of(_resolve(self.vertices, index, x) for x in simplex)
        return any(m & ~f == 0 for f in self.facets)

    def vertex_mask(self, items: Iterable) -> int:
        index = {v: i for i, v in enumerate(self.vertices)}
        return mask_of(_resolve(self.vertices, index, x) for x in items)

    def labels(self, mask: int) -> list[str]:
        return [self.vertices[i] for i in iter_bits(mask)]

    def subcomplex_dim(self, mask: int) -> int:
        """Dimension of the full subcomplex on ``mask`` without building it."""
        return max((popcount(f & mask) for f in self.facets), default=0) - 1

    def is_simplex_on(self, mask: int) -> bool:
        """True when the full subcomplex on ``mask`` is a single (possibly empty) simplex."""
        return any(mask & ~f == 0 for f in self.facets) or mask == 0

    def require_flag(self) -> None:
        if not self.is_flag:
            raise InputError("complex is not flag; right-angled Artin group semantics need a flag complex")


# ---------------------------------------------------------------------------
# constructions


def from_graph(g: Graph) -> SimplicialComplex:
    """Clique (flag) complex of ``g``: facets are the maximal cliques."""
    if g.n == 0:
        return SimplicialComplex((), ())
    return SimplicialComplex(g.vertices, tuple(maximal_cliques(g.adj, g.mask)))


def full_subcomplex(L: SimplicialComplex, subset) -> SimplicialComplex:
    """Full subcomplex on a vertex subset (mask or iterable of labels/indices).

    The result keeps the chosen labels in their original relative order.
    """
    if isinstance(subset, int) and not isinstance(subset, bool):
        if subset >> L.n:
            raise InputError("vertex subset references an unknown vertex index")
        mask = subset
    else:
        mask = L.vertex_mask(subset)
    keep = indices(mask)
    pos = {v: i for i, v in enumerate(keep)}
    faces = maximalize(f & mask for f in L.facets)
    masks = [mask_of(pos[v] for v in iter_bits(f)) for f in faces]
    return SimplicialComplex._from_masks(tuple(L.vertices[v] for v in keep), masks)


def join(L1: SimplicialComplex, L2: SimplicialComplex) -> SimplicialComplex:
    """Simplicial join; vertex labels must be disjoint."""
    clash = set(L1.vertices) & set(L2.vertices)
    if clash:
        raise InputError(f"join needs disjoint labels; shared: {sorted(clash)}")
    if L1.n == 0:
        return L2
    if L2.n == 0:
        return L1
    shift = L1.n
    masks = [f1 | (f2 << shift) for f1 in L1.facets for f2 in L2.facets]
    return SimplicialComplex._from_masks(L1.vertices + L2.vertices, masks)


def disjoint_union(L1: SimplicialComplex, L2: SimplicialComplex) -> SimplicialComplex:
    clash = set(L1.vertices) & set(L2.vertices)
    if clash:
        raise InputError(f"disjoint union needs disjoint labels; shared: {sorted(clash)}")
    shift = L1.n
    masks = list(L1.facets) + [f << shift for f in L2.facets]
    return SimplicialComplex._from_masks(L1.vertices + L2.vertices, masks)


def simplex(labels: Sequence[str] | int) -> SimplicialComplex:
    """The full simplex on the given labels, or Δᵏ on labels ``0..k`` for an int."""
    if isinstance(labels, int):
        labels = [str(i) for i in range(labels + 1)]
    labels = tuple(labels)
    return SimplicialComplex.from_facets(labels, [labels] if labels else [])


def sphere0(labels: Sequence[str] = ("+", "-")) -> SimplicialComplex:
    return SimplicialComplex.from_facets(labels, [[v] for v in labels])


def cycle(m: int, prefix: str = "c") -> SimplicialComplex:
    """Flag m-cycle, m ≥ 4."""
    if m < 4:
        raise InputError("a flag cycle needs at least 4 vertices")
    labels = [f"{prefix}{i}" for i in range(m)]
    return SimplicialComplex.from_facets(labels, [[labels[i], labels[(i + 1) % m]] for i in range(m)])


def cone(L: SimplicialComplex, apex: str = "apex") -> SimplicialComplex:
    return join(L, simplex([apex]))


def suspend(L: SimplicialComplex, poles: Sequence[str] = ("N", "S")) -> SimplicialComplex:
    return join(L, sphere0(poles))


def dominating_vertices(L: SimplicialComplex) -> list[int]:
    """Vertices adjacent in the 1-skeleton to every other vertex."""
    full = L.mask
    adj = L.graph.adj
    return [v for v in range(L.n) if full & ~adj[v] == 1 << v]


def connected_components(L: SimplicialComplex) -> list[int]:
    return components(L.graph.adj, L.mask)


# ---------------------------------------------------------------------------
# JSON


def parse_complex(data) -> SimplicialComplex:
    """Build a complex from a decoded JSON document (either input shape)."""
    if not isinstance(data, dict):
        raise InputError("input must be a JSON object")
    fmt = data.get("format")
    vertices = data.get("vertices")
    if not isinstance(vertices, list):
        raise InputError("'vertices' must be a list of strings")
    if fmt == "flag-graph":
        edges = data.get("edges", [])
        if not isinstance(edges, list) or not all(isinstance(e, list) for e in edges):
            raise InputError("'edges' must be a list of [u, v] pairs")
        return from_graph(Graph.from_edges(vertices, edges))
    if fmt == "complex":
        facets = data.get("facets", [])
        if not isinstance(facets, list) or not all(isinstance(f, list) for f in facets):
            raise InputError("'facets' must be a list of vertex lists")
        return SimplicialComplex.from_facets(vertices, facets)
    raise InputError(f"unknown format {fmt!r}; expected 'flag-graph' or 'complex'")


def load_complex(path) -> SimplicialComplex:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}") from None
    try:
        return parse_complex(data)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


def complex_to_json(L: SimplicialComplex) -> dict:
    return {
        "format": "complex",
        "vertices": list(L.vertices),
        "facets": [L.labels(f) for f in L.facets],
    }


def graph_to_json(g: Graph) -> dict:
    return {
        "format": "flag-graph",
        "vertices": list(g.vertices),
        "edges": [[g.vertices[u], g.vertices[v]] for u, v in g.edges()],
    }
