"""Certified membership in the classes 𝒯ₙ (n ≥ 2).

𝒯ₙ is the smallest class of finite flag complexes containing

* all simplices,
* all complexes of dimension ≤ n-1,
* all n-dimensional complexes with Hₙ(·; ℚ) = 0,

and closed under gluing two members along a common full subcomplex in
𝒯₁ (or empty) and under coning.  The search works on vertex subsets of
one ambient flag complex; every piece it touches is a full subcomplex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Mapping

from .bits import iter_bits, lowest, popcount
from .chordal import T1Certificate, _check_gluing, is_chordal_mask, minimal_ab_separators, t1_decompose, verify_t1_certificate
from .complex import InputError, SimplicialComplex, components, full_subcomplex
from .homology import betti_rational
from .verdict import OK, Verdict, fail

SIMPLEX = "simplex"
LOW_DIM = "low_dim"
TOP_BETTI_ZERO = "top_betti_zero"
CONE = "cone"
GLUING = "gluing"
RULES = (SIMPLEX, LOW_DIM, TOP_BETTI_ZERO, CONE, GLUING)


@dataclass(frozen=True)
class SearchBudget:
    max_depth: int = 64
    max_separators: int = 256
    exhaustive_separators: bool = False

    def __post_init__(self):
        if self.max_depth < 1 or self.max_separators < 1:
            raise ValueError("search budget limits must be positive")


@dataclass(frozen=True)
class TnNode:
    """One rule application.  Leaves use the first three rules."""

    rule: str
    vertices: int
    apex: int | None = None
    separator: int | None = None
    separator_certificate: T1Certificate | None = None
    children: tuple[TnNode, ...] = ()

    def nodes(self):
        yield self
        for c in self.children:
            yield from c.nodes()

    def to_dict(self, L: SimplicialComplex) -> dict:
        out = {"rule": self.rule, "vertices": L.labels(self.vertices)}
        if self.rule == CONE:
            out["apex"] = L.vertices[self.apex]
            out["child"] = self.children[0].to_dict(L)
        elif self.rule == GLUING:
            out["separator"] = L.labels(self.separator)
            out["separator_certificate"] = (None if self.separator_certificate is None
                                            else self.separator_certificate.to_dict(L))
            out["left"] = self.children[0].to_dict(L)
            out["right"] = self.children[1].to_dict(L)
        return out

    @classmethod
    def from_dict(cls, data, L: SimplicialComplex) -> TnNode:
        if not isinstance(data, Mapping):
            raise InputError("certificate node must be an object")
        rule = data.get("rule")
        verts = data.get("vertices")
        if not isinstance(verts, list):
            raise InputError("certificate field 'vertices' must be a list")
        mask = L.vertex_mask(verts)
        if rule in (SIMPLEX, LOW_DIM, TOP_BETTI_ZERO):
            return cls(rule, mask)
        if rule == CONE:
            apex = data.get("apex")
            if not isinstance(apex, str):
                raise InputError("cone apex must be a vertex label")
            return cls(rule, mask, apex=lowest(L.vertex_mask([apex])),
                       children=(cls.from_dict(data.get("child"), L),))
        if rule == GLUING:
            sep = data.get("separator")
            if not isinstance(sep, list):
                raise InputError("gluing separator must be a list")
            sc = data.get("separator_certificate")
            return cls(rule, mask, separator=L.vertex_mask(sep),
                       separator_certificate=None if sc is None else T1Certificate.from_dict(sc, L),
                       children=(cls.from_dict(data.get("left"), L), cls.from_dict(data.get("right"), L)))
        raise InputError(f"unknown 𝒯ₙ rule {rule!r}")


@dataclass(frozen=True)
class TnCertificate:
    n: int
    root: TnNode

    def to_dict(self, L: SimplicialComplex) -> dict:
        return {"n": self.n, "tree": self.root.to_dict(L)}

    @classmethod
    def from_dict(cls, data, L: SimplicialComplex) -> TnCertificate:
        if not isinstance(data, Mapping):
            raise InputError("certificate must be an object")
        n = data.get("n")
        if not isinstance(n, int) or isinstance(n, bool):
            raise InputError("certificate 'n' must be an integer")
        return cls(n, TnNode.from_dict(data.get("tree"), L))


class TnStatus(str, Enum):
    CERTIFIED = "certified"
    EXHAUSTED = "exhausted"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclass(frozen=True)
class TnResult:
    status: TnStatus
    n: int
    certificate: TnCertificate | None = None
    nodes_explored: int = 0

    @property
    def certified(self) -> bool:
        return self.status is TnStatus.CERTIFIED

    def to_dict(self, L: SimplicialComplex) -> dict:
        return {
            "n": self.n,
            "status": self.status.value,
            "nodes_explored": self.nodes_explored,
            "certificate": None if self.certificate is None else self.certificate.to_dict(L),
        }


def _check_n(n) -> int:
    if isinstance(n, float) and math.isinf(n):
        raise InputError("𝒯ₙ is defined for finite n only")
    if not isinstance(n, int) or isinstance(n, bool):
        raise InputError(f"n must be an integer, got {n!r}")
    if n < 2:
        raise InputError("𝒯ₙ certification needs n ≥ 2 (use t1_certify for n = 1)")
    return n


def _top_betti(L: SimplicialComplex, mask: int, n: int) -> int:
    h = betti_rational(full_subcomplex(L, mask))
    return h.betti[n] if n <= h.dim else 0


class _Search:
    def __init__(self, L: SimplicialComplex, n: int, budget: SearchBudget, memoise: bool):
        self.L = L
        self.adj = L.graph.adj
        self.n = n
        self.budget = budget
        self.memo: dict[int, TnNode | None] | None = {} if memoise else None
        self.explored = 0
        self.truncated = False

    def run(self, u: int, depth: int) -> TnNode | None:
        """Certificate for the full subcomplex on ``u``; None if none exists under the strategy.

        Failures caused by budget cut-offs set ``self.truncated`` and are
        never memoised.
        """
        if self.memo is not None and u in self.memo:
            return self.memo[u]
        before = self.truncated
        self.truncated = False
        node = self._solve(u, depth)
        if self.memo is not None and (node is not None or not self.truncated):
            self.memo[u] = node
        self.truncated = self.truncated or before
        return node

    def _solve(self, u: int, depth: int) -> TnNode | None:
        self.explored += 1
        L, n = self.L, self.n
        if u and L.is_simplex_on(u):
            return TnNode(SIMPLEX, u)
        dim = L.subcomplex_dim(u)
        if dim <= n - 1:
            return TnNode(LOW_DIM, u)
        if dim == n and _top_betti(L, u, n) == 0:
            return TnNode(TOP_BETTI_ZERO, u)
        if depth >= self.budget.max_depth:
            self.truncated = True
            return None
        apex = next((v for v in iter_bits(u) if u & ~self.adj[v] == 1 << v), None)
        if apex is not None:
            child = self.run(u & ~(1 << apex), depth + 1)
            if child is not None:
                return TnNode(CONE, u, apex=apex, children=(child,))
        tried: set[int] = set()
        for sep, left, right in self._splits(u):
            tried.add(sep)
            if len(tried) > self.budget.max_separators:
                self.truncated = True
                return None
            a = self.run(left, depth + 1)
            if a is None:
                continue
            b = self.run(right, depth + 1)
            if b is None:
                continue
            cert = t1_decompose(L, sep) if sep else None
            return TnNode(GLUING, u, separator=sep, separator_certificate=cert, children=(a, b))
        return None

    def _splits(self, u: int):
        """Candidate gluings (separator, left, right) in deterministic order.

        Separators come in lexicographic order of their index tuples,
        smallest sets first in exhaustive mode.
        """
        adj = self.adj
        if self.budget.exhaustive_separators:
            for size in range(popcount(u) - 1):
                for sep_idx in combinations(list(iter_bits(u)), size):
                    sep = sum(1 << i for i in sep_idx)
                    comps = components(adj, u & ~sep)
                    if len(comps) < 2 or not is_chordal_mask(adj, sep):
                        continue
                    # every bipartition of the components, least component on the left
                    rest = comps[1:]
                    for pick in range(1 << len(rest)):
                        if pick == (1 << len(rest)) - 1:
                            continue
                        side = comps[0]
                        for i, c in enumerate(rest):
                            if pick >> i & 1:
                                side |= c
                        yield sep, sep | side, u & ~side
            return
        comps = components(adj, u)
        if len(comps) > 1:
            yield 0, comps[0], u & ~comps[0]
        seps = minimal_ab_separators(adj, u, self.budget.max_separators)
        if seps.truncated:
            self.truncated = True
        for sep in seps.separators:
            if not is_chordal_mask(adj, sep):
                continue
            first = components(adj, u & ~sep)[0]
            yield sep, sep | first, u & ~first


def certify_tn(L: SimplicialComplex, n: int, budget: SearchBudget | None = None,
               memoise: bool = True) -> TnResult:
    """Search for a derivation of L ∈ 𝒯ₙ.

    Rules are tried in the order simplex, low dimension, vanishing top
    Betti number, cone (least dominating vertex), then gluings: along
    connected components and chordal minimal separators by default, or
    along every chordal separating full subcomplex and every split of the
    remaining components when ``exhaustive_separators`` is set.
    """
    L.require_flag()
    n = _check_n(n)
    budget = budget or SearchBudget()
    search = _Search(L, n, budget, memoise)
    root = search.run(L.mask, 0)
    if root is not None:
        return TnResult(TnStatus.CERTIFIED, n, TnCertificate(n, root), search.explored)
    status = TnStatus.BUDGET_EXCEEDED if search.truncated else TnStatus.EXHAUSTED
    return TnResult(status, n, None, search.explored)


def lift_t1_certificate(cert: T1Certificate, n: int) -> TnCertificate:
    """Reinterpret a 𝒯₁ decomposition as a 𝒯ₙ derivation (𝒯₁ ⊆ 𝒯ₙ)."""
    n = _check_n(n)

    def lift(node: T1Certificate) -> TnNode:
        if node.is_leaf:
            return TnNode(SIMPLEX, node.vertices)
        sep = node.separator
        sep_cert = T1Certificate(sep) if sep else None
        return TnNode(GLUING, node.vertices, separator=sep, separator_certificate=sep_cert,
                      children=(lift(node.left), lift(node.right)))

    return TnCertificate(n, lift(cert))


def verify_tn_certificate(cert, L: SimplicialComplex, n) -> Verdict:
    """Independently re-check every rule application of a 𝒯ₙ certificate.

    Accepts a :class:`TnCertificate` or its JSON form.  Dimensions,
    Betti numbers, dominating vertices, separator fullness and separator
    chordality are all recomputed from L.
    """
    if not L.is_flag:
        return fail("complex is not flag")
    if isinstance(cert, Mapping):
        try:
            cert = TnCertificate.from_dict(cert, L)
        except (InputError, TypeError, ValueError) as exc:
            return fail(f"malformed certificate: {exc}")
    if not isinstance(cert, TnCertificate):
        return fail("not a TnCertificate")
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        return fail(f"n = {n!r} is not a finite integer ≥ 2")
    if cert.n != n:
        return fail(f"certificate is for n = {cert.n}, expected {n}")
    if cert.root.vertices != L.mask:
        return fail("certificate root does not cover the complex")
    return _verify_node(cert.root, L, n)


def _verify_node(node, L: SimplicialComplex, n: int) -> Verdict:
    if not isinstance(node, TnNode) or node.rule not in RULES:
        return fail("unknown node")
    u = node.vertices
    if u & ~L.mask:
        return fail("node references unknown vertices")
    where = L.labels(u)
    if node.rule in (SIMPLEX, LOW_DIM, TOP_BETTI_ZERO):
        if node.children or node.apex is not None or node.separator is not None:
            return fail(f"leaf {where} carries extra fields")
        if node.rule == SIMPLEX:
            return OK if u and L.is_simplex_on(u) else fail(f"{where} is not a simplex")
        sub = full_subcomplex(L, u)
        if node.rule == LOW_DIM:
            return OK if sub.dim <= n - 1 else fail(f"{where} has dimension {sub.dim} > {n - 1}")
        if sub.dim != n:
            return fail(f"{where} has dimension {sub.dim}, not {n}")
        b = betti_rational(sub).betti[n]
        return OK if b == 0 else fail(f"H_{n}({where}; Q) has rank {b}")
    if node.rule == CONE:
        if len(node.children) != 1 or node.apex is None:
            return fail(f"cone node {where} malformed")
        a = node.apex
        if not (0 <= a < L.n) or not u >> a & 1:
            return fail(f"apex is not a vertex of {where}")
        if u & ~L.graph.adj[a] != 1 << a:
            return fail(f"apex {L.vertices[a]} does not dominate {where}")
        child = node.children[0]
        if not isinstance(child, TnNode) or child.vertices != u & ~(1 << a):
            return fail(f"cone child of {where} is not the base")
        return _verify_node(child, L, n)
    # gluing
    if len(node.children) != 2 or node.separator is None or node.apex is not None:
        return fail(f"gluing node {where} malformed")
    sep = node.separator

    def sep_ok(s: int) -> bool:
        if s == 0:
            return node.separator_certificate is None
        sc = node.separator_certificate
        return sc is not None and bool(verify_t1_certificate(sc, L, root=s))

    left, right = node.children
    if not isinstance(left, TnNode) or not isinstance(right, TnNode):
        return fail("gluing children malformed")
    return _check_gluing(u, sep, left, right, L, lambda c, L_: _verify_node(c, L_, n), sep_ok,
                         "in 𝒯₁ (with a valid certificate) or empty")


__all__ = [
    "SearchBudget", "TnCertificate", "TnNode", "TnResult", "TnStatus",
    "certify_tn", "lift_t1_certificate", "verify_tn_certificate",
]
