"""Chordal graphs: recognition, witnesses, minimal separators and 𝒯₁ certificates.

A flag complex lies in 𝒯₁ exactly when its 1-skeleton is chordal; the
certificate is a clique-separator decomposition down to simplices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .bits import iter_bits, lex_key, lowest, mask_of
from .complex import Graph, InputError, SimplicialComplex, components, is_clique, neighbourhood
from .verdict import OK, Verdict, fail


def lex_bfs(adj: Sequence[int], mask: int) -> list[int]:
    """Lexicographic breadth-first search order of the subgraph on ``mask``.

    Ties between equal labels go to the least vertex index.
    """
    unvisited = set(iter_bits(mask))
    label: dict[int, list[int]] = {v: [] for v in unvisited}
    order = []
    for step in range(len(unvisited), 0, -1):
        v = max(unvisited, key=lambda u: (label[u], -u))
        unvisited.remove(v)
        order.append(v)
        for w in iter_bits(adj[v] & mask):
            if w in unvisited:
                label[w].append(step)
    return order


def peo_violation(adj: Sequence[int], order: Sequence[int]) -> tuple[int, int, int] | None:
    """First ``(v, x, y)`` with x, y later non-adjacent neighbours of v, else None."""
    later = mask_of(order)
    for v in order:
        later &= ~(1 << v)
        nb = adj[v] & later
        for x in iter_bits(nb):
            bad = nb & ~adj[x] & ~(1 << x)
            if bad:
                return v, x, lowest(bad)
    return None


def _shortest_path(adj: Sequence[int], allowed: int, src: int, dst: int) -> list[int] | None:
    prev = {src: src}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u == dst:
            path = [u]
            while u != src:
                u = prev[u]
                path.append(u)
            return path[::-1]
        for w in iter_bits(adj[u] & allowed):
            if w not in prev:
                prev[w] = u
                queue.append(w)
    return None


def _cycle_through(adj: Sequence[int], mask: int, v: int, x: int, y: int) -> list[int] | None:
    # x and y are non-adjacent neighbours of v; drop v and its other neighbours
    allowed = (mask & ~adj[v] & ~(1 << v)) | (1 << x) | (1 << y)
    path = _shortest_path(adj, allowed, x, y)
    if path is None:
        return None
    return [v] + path


def find_induced_cycle(adj: Sequence[int], mask: int,
                       hint: tuple[int, int, int] | None = None) -> list[int] | None:
    """An induced cycle of length ≥ 4 in the subgraph on ``mask``, or None if chordal.

    Every induced cycle passes through some vertex v with two non-adjacent
    neighbours x, y joined by a path avoiding the rest of N[v]; trying the
    hinted triple first and then all triples makes the search complete.
    """
    if hint is not None:
        cyc = _cycle_through(adj, mask, *hint)
        if cyc is not None:
            return cyc
    for v in iter_bits(mask):
        nb = adj[v] & mask
        for x in iter_bits(nb):
            for y in iter_bits(nb & ~adj[x] & ~((1 << (x + 1)) - 1)):
                cyc = _cycle_through(adj, mask, v, x, y)
                if cyc is not None:
                    return cyc
    return None


@dataclass(frozen=True)
class ChordalityResult:
    """``chordal`` with a perfect elimination order, or an induced-cycle witness."""

    chordal: bool
    order: tuple[int, ...] | None = None
    cycle: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.chordal


def chordality(adj: Sequence[int], mask: int) -> ChordalityResult:
    order = lex_bfs(adj, mask)[::-1]
    bad = peo_violation(adj, order)
    if bad is None:
        return ChordalityResult(True, order=tuple(order))
    cyc = find_induced_cycle(adj, mask, hint=bad)
    if cyc is None:  # pragma: no cover - would contradict the LexBFS theorem
        raise RuntimeError("elimination order failed but no induced cycle exists")
    return ChordalityResult(False, cycle=tuple(cyc))


def is_chordal(g: Graph) -> ChordalityResult:
    """Decide chordality of ``g`` with a checkable witness either way."""
    return chordality(g.adj, g.mask)


def is_chordal_mask(adj: Sequence[int], mask: int) -> bool:
    return peo_violation(adj, lex_bfs(adj, mask)[::-1]) is None


def verify_peo(g: Graph, order: Sequence[int]) -> bool:
    if sorted(order) != list(range(g.n)):
        return False
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [w for w in range(g.n) if g.has_edge(v, w) and pos[w] > pos[v]]
        for i, a in enumerate(later):
            for b in later[i + 1:]:
                if not g.has_edge(a, b):
                    return False
    return True


def verify_induced_cycle(g: Graph, cyc: Sequence[int]) -> bool:
    k = len(cyc)
    if k < 4 or len(set(cyc)) != k or not all(0 <= v < g.n for v in cyc):
        return False
    for i in range(k):
        for j in range(i + 1, k):
            consecutive = j == i + 1 or (i == 0 and j == k - 1)
            if g.has_edge(cyc[i], cyc[j]) != consecutive:
                return False
    return True


# ---------------------------------------------------------------------------
# minimal separators


@dataclass(frozen=True)
class SeparatorList:
    separators: tuple[int, ...]
    truncated: bool = False


def minimal_ab_separators(adj: Sequence[int], mask: int, budget: int | None = None) -> SeparatorList:
    """All minimal a,b-separators of the subgraph on ``mask`` (Berry–Bordat–Cogis).

    A minimal a,b-separator is a set S such that removing S leaves at
    least two components whose neighbourhood is all of S.  Output is
    sorted lexicographically by index tuple.
    """
    found: list[int] = []
    seen: set[int] = set()
    queue: deque[int] = deque()
    truncated = False

    def add(s: int) -> bool:
        nonlocal truncated
        if s == 0 or s in seen:
            return True
        if budget is not None and len(found) >= budget:
            truncated = True
            return False
        seen.add(s)
        found.append(s)
        queue.append(s)
        return True

    def close(removed: int) -> bool:
        for comp in components(adj, mask & ~removed):
            if not add(neighbourhood(adj, comp) & mask):
                return False
        return True

    running = True
    for v in iter_bits(mask):
        if not close((adj[v] & mask) | (1 << v)):
            running = False
            break
    while running and queue:
        s = queue.popleft()
        for x in iter_bits(s):
            if not close(s | (adj[x] & mask)):
                running = False
                break
    found.sort(key=lex_key)
    return SeparatorList(tuple(found), truncated)


def minimal_separators(g: Graph, budget: int | None = None) -> SeparatorList:
    """Inclusion-minimal vertex sets whose removal increases the component count."""
    ab = minimal_ab_separators(g.adj, g.mask, budget)
    keep = [s for s in ab.separators if not any(t != s and t & ~s == 0 for t in ab.separators)]
    return SeparatorList(tuple(keep), ab.truncated)


# ---------------------------------------------------------------------------
# 𝒯₁ certificates


@dataclass(frozen=True)
class T1Certificate:
    """Clique-separator decomposition tree.

    A leaf (``separator is None``) claims its vertex set spans a simplex.
    An inner node glues ``left`` and ``right`` along ``separator``, which
    must be their common vertex set and span a simplex or be empty.
    """

    vertices: int
    separator: int | None = None
    left: T1Certificate | None = None
    right: T1Certificate | None = None

    @property
    def is_leaf(self) -> bool:
        return self.separator is None

    def leaves(self) -> list[int]:
        if self.is_leaf:
            return [self.vertices]
        return self.left.leaves() + self.right.leaves()

    def to_dict(self, L: SimplicialComplex) -> dict:
        if self.is_leaf:
            return {"rule": "simplex", "vertices": L.labels(self.vertices)}
        return {
            "rule": "gluing",
            "vertices": L.labels(self.vertices),
            "separator": L.labels(self.separator),
            "left": self.left.to_dict(L),
            "right": self.right.to_dict(L),
        }

    @classmethod
    def from_dict(cls, data, L: SimplicialComplex) -> T1Certificate:
        if not isinstance(data, dict):
            raise InputError("certificate node must be an object")
        rule = data.get("rule")
        verts = L.vertex_mask(_label_list(data, "vertices"))
        if rule == "simplex":
            return cls(verts)
        if rule == "gluing":
            sep = L.vertex_mask(_label_list(data, "separator"))
            return cls(verts, sep, cls.from_dict(data.get("left"), L), cls.from_dict(data.get("right"), L))
        raise InputError(f"unknown 𝒯₁ rule {rule!r}")


def _label_list(data: dict, key: str) -> list:
    val = data.get(key)
    if not isinstance(val, list):
        raise InputError(f"certificate field {key!r} must be a list")
    return val


@dataclass(frozen=True)
class T1Result:
    certified: bool
    certificate: T1Certificate | None = None
    cycle: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.certified


class _NotT1(Exception):
    def __init__(self, piece: int):
        self.piece = piece


def t1_decompose(L: SimplicialComplex, mask: int) -> T1Certificate:
    """Clique-separator decomposition of the full subcomplex on ``mask``.

    Raises ``_NotT1`` carrying a connected piece that has no clique
    minimal separator and is not a simplex.
    """
    adj = L.graph.adj
    if L.is_simplex_on(mask):
        return T1Certificate(mask)
    comps = components(adj, mask)
    if len(comps) > 1:
        sep = 0
        first = comps[0]
    else:
        seps = [s for s in minimal_ab_separators(adj, mask).separators if is_clique(adj, s)]
        if not seps:
            raise _NotT1(mask)
        sep = seps[0]
        first = components(adj, mask & ~sep)[0]
    left = sep | first
    right = mask & ~first
    return T1Certificate(mask, sep, t1_decompose(L, left), t1_decompose(L, right))


def t1_certify(L: SimplicialComplex) -> T1Result:
    """Certify L ∈ 𝒯₁ by clique-separator decomposition, or refute with an induced cycle."""
    L.require_flag()
    try:
        return T1Result(True, certificate=t1_decompose(L, L.mask))
    except _NotT1 as exc:
        cyc = find_induced_cycle(L.graph.adj, exc.piece)
        if cyc is None:  # pragma: no cover - Dirac: such a piece is never chordal
            raise RuntimeError("decomposition stuck on a chordal piece") from None
        return T1Result(False, cycle=tuple(cyc))


def verify_t1_certificate(cert: T1Certificate, L: SimplicialComplex, root: int | None = None) -> Verdict:
    """Re-check every node of a 𝒯₁ certificate against L.

    ``root`` is the vertex set the tree must cover; defaults to all of L.
    """
    if not isinstance(cert, T1Certificate):
        return fail("not a T1Certificate")
    expected = L.mask if root is None else root
    if cert.vertices != expected:
        return fail(f"root covers {L.labels(cert.vertices)}, expected {L.labels(expected)}")
    return _verify_t1_node(cert, L)


def _verify_t1_node(node: T1Certificate, L: SimplicialComplex) -> Verdict:
    u = node.vertices
    if u & ~L.mask:
        return fail("node references unknown vertices")
    if node.is_leaf:
        if node.left is not None or node.right is not None:
            return fail("leaf with children")
        if not L.is_simplex_on(u):
            return fail(f"leaf {L.labels(u)} does not span a simplex")
        return OK
    return _check_gluing(node.vertices, node.separator, node.left, node.right, L, _verify_t1_node,
                         lambda s: L.is_simplex_on(s), "simplex or empty")


def _check_gluing(u, sep, left, right, L, verify_child, sep_ok, sep_desc) -> Verdict:
    if left is None or right is None:
        return fail("gluing node needs two children")
    a, b = left.vertices, right.vertices
    if a | b != u:
        return fail(f"children do not cover {L.labels(u)}")
    if a & b != sep:
        return fail(f"separator {L.labels(sep)} is not the intersection {L.labels(a & b)}")
    if a == u or b == u:
        return fail("gluing is trivial: one side is the whole complex")
    # every simplex of L[u] must lie on one side, i.e. L[u] is the union of L[a] and L[b]
    for f in L.facets:
        g = f & u
        if g & ~a and g & ~b:
            return fail(f"simplex {L.labels(g)} crosses the separator {L.labels(sep)}")
    if not sep_ok(sep):
        return fail(f"separator {L.labels(sep)} is not {sep_desc}")
    for child in (left, right):
        v = verify_child(child, L)
        if not v:
            return v
    return OK


__all__ = [
    "ChordalityResult", "SeparatorList", "T1Certificate", "T1Result",
    "chordality", "find_induced_cycle", "is_chordal", "is_chordal_mask", "lex_bfs",
    "minimal_ab_separators", "minimal_separators", "peo_violation", "t1_certify",
    "t1_decompose", "verify_induced_cycle", "verify_peo", "verify_t1_certificate",
]
