"""Forward-chaining deduction of (n, m)-coherence facts with proof traces.

Every group expression node carries positive, negative and finiteness
facts.  Rules fire in a fixed order until nothing new is derived; each
fact records the rule, the mathematical result it rests on and the ids
of its premises, so a derivation can be replayed and re-checked.

Negative facts come only from Droms' theorem, the (F₂)^k computation
and Bestvina–Brady obstructions.  Failing to derive a positive fact is
never turned into a negative one.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .chordal import T1Result, t1_certify, verify_induced_cycle, verify_t1_certificate
from .coherence import INF, CoherencePair, ExtNat, FactSet, check_consistency, dec, inc, to_json
from .complex import SimplicialComplex, full_subcomplex
from .connectivity import connectivity_profile
from .expr import (AmalgamOverRaag, Assumed, DirectProduct, Extension, Free, FreeAbelian, GraphOfGroups,
                   GroupExpr, Raag, Trivial)
from .fundamental_group import DEFAULT_PI1_BUDGET
from .homology import HomologySummary, betti_rational, integral_homology
from .obstruction import DEFAULT_SUBSET_CAP, ScanReport, scan_obstructions
from .tn import SearchBudget, TnCertificate, TnResult, TnStatus, certify_tn, verify_tn_certificate
from .verdict import OK, Verdict, fail

SOURCES = {
    "ASSUMED": "hypothesis supplied by the user",
    "FIN-0": "every group is of type F_0",
    "FIN-BASE": "finite classifying space (free, free abelian and right-angled Artin groups)",
    "FIN-EXT": "finiteness of extensions: N and Q of type F_n give G of type F_n; "
               "G of type F_n and N of type F_(n-1) give Q of type F_n",
    "FIN-GOG": "finiteness of graphs of groups: vertex groups F_n and edge groups F_(n-1) give F_n",
    "R1": "virtually poly-cyclic groups are (0,inf)-coherent",
    "R2": "groups of geometric dimension <= n are (n,inf)-coherent",
    "R3": "(n,m)-coherence implies (n',m')-coherence for n <= n' < m' <= m",
    "R4": "Droms: A_L is (1,2)-coherent iff (1,inf)-coherent iff the 1-skeleton of L is chordal",
    "R5": "Karrass-Solitar: (1,2)-coherent vertex groups over (0,1)-coherent edge groups",
    "R6": "graphs of groups: (n,m)-coherent vertex groups over (0,m-1)-coherent (n = 1) "
          "or (1,m-1)-coherent (n >= 2) edge groups",
    "R7": "extensions: Q (n,m)-coherent and N (0,m)-coherent give G (n,m)-coherent; "
          "G (n,m)-coherent and N of type F_(m-1) give Q (n,m)-coherent",
    "R8": "Fisher / Jaikin-Zapirain-Linton with Davis-Leary: dim L = n and H_n(L;Q) = 0 give "
          "cd A_L = n+1 and vanishing top l2-Betti number, so A_L is (n,inf)-coherent",
    "R9": "(F_2)^k is (n,n+1)-coherent iff n >= k",
    "R10": "L in T_n implies A_L is (n,inf)-coherent",
    "R11": "Bestvina-Brady: an (n-1)-connected full subcomplex that is not n-connected "
           "means A_L is not (n,n+1)-coherent",
    "R12": "non-coherence passes to every pair whose closure contains it",
}


# ---------------------------------------------------------------------------
# per-complex analysis shared by the calculus and the report


@dataclass(frozen=True)
class AnalysisBudget:
    max_n: int | None = None          # default: dim L + 1
    tn: SearchBudget = field(default_factory=SearchBudget)
    max_subsets: int = DEFAULT_SUBSET_CAP
    pi1_budget: int = DEFAULT_PI1_BUDGET
    max_passes: int = 64
    workers: int = 1

    def levels(self, L: SimplicialComplex) -> int:
        return self.max_n if self.max_n is not None else max(L.dim + 1, 1)


@dataclass(frozen=True)
class RaagAnalysis:
    complex: SimplicialComplex
    max_n: int
    t1: T1Result
    homology: HomologySummary
    tn: dict[int, TnResult]
    scans: dict[int, ScanReport]

    @property
    def complete(self) -> bool:
        return (all(r.status is not TnStatus.BUDGET_EXCEEDED for r in self.tn.values())
                and all(s.exhaustive for s in self.scans.values()))


def analyse_raag(L: SimplicialComplex, budget: AnalysisBudget | None = None) -> RaagAnalysis:
    """Chordality, homology, 𝒯ₙ searches (n = 2..max_n) and obstruction scans (n = 1..max_n).

    The per-level searches are independent and run on ``budget.workers``
    threads; results are keyed by level so scheduling cannot change them.
    """
    budget = budget or AnalysisBudget()
    L.require_flag()
    max_n = budget.levels(L)
    jobs = [("tn", n) for n in range(2, max_n + 1)] + [("bb", n) for n in range(1, max_n + 1)]

    def run(job):
        kind, n = job
        if kind == "tn":
            return certify_tn(L, n, budget.tn)
        return scan_obstructions(L, n, budget.max_subsets, budget.pi1_budget)

    if budget.workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=budget.workers) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(j) for j in jobs]
    tn = {n: r for (kind, n), r in zip(jobs, results) if kind == "tn"}
    scans = {n: r for (kind, n), r in zip(jobs, results) if kind == "bb"}
    return RaagAnalysis(L, max_n, t1_certify(L), integral_homology(L), tn, scans)


# ---------------------------------------------------------------------------
# facts and traces


@dataclass(frozen=True)
class Fact:
    id: int
    node: str
    kind: str                      # positive | negative | finiteness
    value: object                  # CoherencePair or ExtNat
    rule: str
    premises: tuple[int, ...] = ()
    detail: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def source(self) -> str:
        return SOURCES[self.rule]

    def to_json(self) -> dict:
        value = self.value.to_json() if isinstance(self.value, CoherencePair) else to_json(self.value)
        out = {"id": self.id, "node": self.node, "kind": self.kind, "value": value,
               "rule": self.rule, "source": self.source, "premises": list(self.premises)}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class ProofTrace:
    facts: list[Fact] = field(default_factory=list)

    def derivation(self, fid: int) -> dict:
        """Nested derivation tree of one fact."""
        f = self.facts[fid]
        out = f.to_json()
        out.pop("premises")
        out.pop("detail", None)
        out["from"] = [self.derivation(p) for p in f.premises]
        return out

    def to_json(self) -> list[dict]:
        return [f.to_json() for f in self.facts]


class _Node:
    def __init__(self, path: str, expr: GroupExpr, original: GroupExpr, children: list[_Node]):
        self.path = path
        self.expr = expr
        self.original = original
        self.children = children
        self.pos: list[int] = []
        self.neg: list[int] = []
        self.fin: ExtNat = 0
        self.fin_fact: int | None = None


def normalise(expr: GroupExpr) -> GroupExpr:
    """Rewrite direct products: free abelian factors become the kernel of an extension."""
    if not isinstance(expr, DirectProduct):
        return expr
    rank = 0
    others = []
    for f in expr.factors:
        if isinstance(f, FreeAbelian):
            rank += f.rank
        elif isinstance(f, Free) and f.rank == 1:
            rank += 1
        elif isinstance(f, Trivial) or (isinstance(f, Free) and f.rank == 0):
            continue
        else:
            others.append(f)
    rest = None if not others else others[0] if len(others) == 1 else DirectProduct(tuple(others))
    if rank and rest is not None:
        return Extension(FreeAbelian(rank), rest)
    if rank:
        return FreeAbelian(rank)
    if rest is None:
        return Trivial()
    return rest


def _children(expr: GroupExpr) -> tuple[GroupExpr, ...]:
    if isinstance(expr, AmalgamOverRaag):
        return (expr.left, expr.right, expr.edge_group)
    return expr.children()


@dataclass
class DerivationResult:
    facts: FactSet
    trace: ProofTrace
    node_facts: dict[str, FactSet]
    node_exprs: dict[str, str]
    incomplete: bool
    analyses: dict[str, RaagAnalysis]
    _engine: _Engine = field(repr=False, compare=False, default=None)

    def fact_for(self, kind: str, pair: CoherencePair) -> int | None:
        """Id of the first fact on the root establishing ``pair`` (or something implying it)."""
        eng = self._engine
        ids = eng.root.pos if kind == "positive" else eng.root.neg
        for fid in ids:
            v = eng.facts[fid].value
            if (v.implies(pair) if kind == "positive" else pair.implies(v)):
                return fid
        return None

    def consistency(self):
        return check_consistency(self.facts, lambda kind, p: self.trace.derivation(self.fact_for(kind, p)))

    def to_json(self) -> dict:
        out = self.facts.to_json()
        out["incomplete"] = self.incomplete
        out["nodes"] = {k: {"expr": self.node_exprs[k], **self.node_facts[k].to_json()}
                        for k in sorted(self.node_facts)}
        out["traces"] = self.trace.to_json()
        return out


class _Engine:
    def __init__(self, expr: GroupExpr, budget: AnalysisBudget, analyses: dict | None = None):
        self.budget = budget
        self.facts: list[Fact] = []
        self.nodes: list[_Node] = []
        self.analyses: dict[str, RaagAnalysis] = {}
        self._cache: dict[SimplicialComplex, RaagAnalysis] = dict(analyses or {})
        self.root = self._build("0", expr)
        self.incomplete = False

    # -- tree --------------------------------------------------------------

    def _build(self, path: str, expr: GroupExpr) -> _Node:
        norm = normalise(expr)
        kids = [self._build(f"{path}.{i}", c) for i, c in enumerate(_children(norm))]
        node = _Node(path, norm, expr, kids)
        self.nodes.append(node)   # post-order
        return node

    def analysis(self, node: _Node) -> RaagAnalysis:
        L = node.expr.complex
        if L not in self._cache:
            self._cache[L] = analyse_raag(L, self.budget)
        a = self._cache[L]
        self.analyses[node.path] = a
        return a

    # -- fact store --------------------------------------------------------

    def _new(self, node: _Node, kind: str, value, rule: str, premises=(), detail=None) -> int:
        fid = len(self.facts)
        self.facts.append(Fact(fid, node.path, kind, value, rule, tuple(premises), detail or {}))
        return fid

    def holds(self, node: _Node, pair: CoherencePair) -> bool:
        return any(self.facts[f].value.implies(pair) for f in node.pos)

    def refuted(self, node: _Node, pair: CoherencePair) -> bool:
        return any(pair.implies(self.facts[f].value) for f in node.neg)

    def max_m(self, node: _Node, n: ExtNat) -> ExtNat | None:
        best = None
        for f in node.pos:
            p = self.facts[f].value
            if p.n <= n < p.m and (best is None or p.m > best):
                best = p.m
        return best

    def pos_levels(self, node: _Node) -> list:
        return sorted({self.facts[f].value.n for f in node.pos})

    def add_pos(self, node: _Node, pair: CoherencePair, rule: str, premises=(), detail=None) -> bool:
        if self.holds(node, pair):
            return False
        node.pos.append(self._new(node, "positive", pair, rule, premises, detail))
        return True

    def add_neg(self, node: _Node, pair: CoherencePair, rule: str, premises=(), detail=None) -> bool:
        if self.refuted(node, pair):
            return False
        node.neg.append(self._new(node, "negative", pair, rule, premises, detail))
        return True

    def support(self, node: _Node, pair: CoherencePair) -> int:
        """Fact id stating exactly ``pair``, adding a monotonicity step if needed."""
        for f in node.pos:
            if self.facts[f].value == pair:
                return f
        for f in node.pos:
            if self.facts[f].value.implies(pair):
                fid = self._new(node, "positive", pair, "R3", (f,))
                node.pos.append(fid)
                return fid
        raise KeyError(pair)

    def set_fin(self, node: _Node, value: ExtNat, rule: str, premises=()) -> bool:
        if node.fin_fact is not None and value <= node.fin:
            return False
        node.fin = value
        node.fin_fact = self._new(node, "finiteness", value, rule, premises)
        return True

    # -- rules -------------------------------------------------------------

    def run(self) -> None:
        for node in self.nodes:
            self.set_fin(node, 0, "FIN-0")
            if isinstance(node.expr, Assumed):
                a = node.expr
                for p in a.positive:
                    self.add_pos(node, p, "ASSUMED")
                for p in a.negative:
                    self.add_neg(node, p, "ASSUMED")
                if a.finiteness:
                    self.set_fin(node, a.finiteness, "ASSUMED")
        self.saturate()

    def saturate(self) -> int:
        """Apply all rules until nothing changes; returns the number of new facts."""
        start = len(self.facts)
        for _ in range(self.budget.max_passes):
            changed = False
            for node in self.nodes:
                changed |= self.apply(node)
            if not changed:
                return len(self.facts) - start
        self.incomplete = True
        return len(self.facts) - start

    def apply(self, node: _Node) -> bool:
        e = node.expr
        changed = False
        if isinstance(e, (Trivial, FreeAbelian, Free, Raag)):
            changed |= self.set_fin(node, INF, "FIN-BASE")
        if isinstance(e, Raag):
            changed |= self.raag_rules(node)
        elif isinstance(e, (Trivial, FreeAbelian)) or (isinstance(e, Free) and e.rank <= 1):
            changed |= self.add_pos(node, CoherencePair(0, INF), "R1")
        elif isinstance(e, Free):
            changed |= self.add_pos(node, CoherencePair(1, INF), "R2", detail={"geometric_dimension": 1})
        elif isinstance(e, (AmalgamOverRaag, GraphOfGroups)):
            changed |= self.gog_rules(node)
        elif isinstance(e, Extension):
            changed |= self.extension_rules(node)
        elif isinstance(e, DirectProduct):
            changed |= self.product_rules(node)
        return changed

    def raag_rules(self, node: _Node) -> bool:
        L = node.expr.complex
        a = self.analysis(node)
        if not a.complete:
            self.incomplete = True
        changed = False
        if L.n == 0 or L.is_simplex_on(L.mask):
            changed |= self.add_pos(node, CoherencePair(0, INF), "R1", detail={"free_abelian_rank": L.n})
        changed |= self.add_pos(node, CoherencePair(L.dim + 1, INF), "R2",
                                detail={"geometric_dimension": L.dim + 1})
        if a.t1.certified:
            changed |= self.add_pos(node, CoherencePair(1, INF), "R4",
                                    detail={"t1_certificate": a.t1.certificate.to_dict(L)})
        else:
            changed |= self.add_neg(node, CoherencePair(1, 2), "R4",
                                    detail={"induced_cycle": [L.vertices[v] for v in a.t1.cycle]})
        d = L.dim
        if d >= 2 and a.homology.betti[d] == 0:
            changed |= self.add_pos(node, CoherencePair(d, INF), "R8",
                                    detail={"dimension": d, "top_betti": 0})
        for n in sorted(a.tn):
            r = a.tn[n]
            if r.certified:
                changed |= self.add_pos(node, CoherencePair(n, INF), "R10",
                                        detail={"certificate": r.certificate.to_dict(L)})
        for n in sorted(a.scans):
            s = a.scans[n]
            if s.obstructions:
                changed |= self.add_neg(node, CoherencePair(n, n + 1), "R11",
                                        detail={"obstruction": s.obstructions[0].to_dict(L)})
        return changed

    def r9(self, node: _Node, k: int, detail: dict) -> bool:
        changed = self.add_pos(node, CoherencePair(k, INF), "R9", detail=detail)
        for n in range(k):
            changed |= self.add_neg(node, CoherencePair(n, n + 1), "R9", detail=detail)
        return changed

    def product_rules(self, node: _Node) -> bool:
        kids = node.children
        changed = False
        if all(isinstance(c.expr, Free) and c.expr.rank == 2 for c in kids):
            changed |= self.r9(node, len(kids), {"isomorphic_to": f"(F_2)^{len(kids)}"})
        if all(c.fin_fact is not None for c in kids):
            low = min(kids, key=lambda c: c.fin)
            changed |= self.set_fin(node, low.fin, "FIN-EXT", [c.fin_fact for c in kids])
        return changed

    def gog_rules(self, node: _Node) -> bool:
        e = node.expr
        if isinstance(e, AmalgamOverRaag):
            verts, edges = node.children[:2], node.children[2:]
        else:
            nv = len(e.vertex_groups)
            verts, edges = node.children[:nv], node.children[nv:]
        changed = False
        p12, p01 = CoherencePair(1, 2), CoherencePair(0, 1)
        if all(self.holds(v, p12) for v in verts) and all(self.holds(x, p01) for x in edges):
            if not self.holds(node, p12):
                prem = [self.support(v, p12) for v in verts] + [self.support(x, p01) for x in edges]
                changed |= self.add_pos(node, p12, "R5", prem)
        levels = sorted({max(n, 1) for v in verts for n in self.pos_levels(v)})
        for n in levels:
            ms = [self.max_m(v, n) for v in verts]
            if any(m is None for m in ms):
                continue
            m = min(ms)
            e0 = 0 if n == 1 else 1
            if edges:
                mes = [self.max_m(x, e0) for x in edges]
                if any(me is None for me in mes):
                    continue
                m = min(m, inc(min(mes)))
            if not m > n:
                continue
            pair = CoherencePair(n, m)
            if self.holds(node, pair):
                continue
            prem = [self.support(v, pair) for v in verts]
            prem += [self.support(x, CoherencePair(e0, dec(m))) for x in edges]
            changed |= self.add_pos(node, pair, "R6", prem, {"n": n, "edge_hypothesis": [e0, to_json(dec(m))]})
        if all(c.fin_fact is not None for c in node.children):
            fin = min([v.fin for v in verts] + [inc(x.fin) for x in edges])
            changed |= self.set_fin(node, fin, "FIN-GOG", [c.fin_fact for c in node.children])
        return changed

    def extension_rules(self, node: _Node) -> bool:
        kernel, quotient = node.children
        changed = False
        m_kernel = self.max_m(kernel, 0)
        if m_kernel is not None:
            for n in self.pos_levels(quotient):
                mq = self.max_m(quotient, n)
                if mq is None:
                    continue
                m = min(mq, m_kernel)
                if not m > n:
                    continue
                pair = CoherencePair(n, m)
                if self.holds(node, pair):
                    continue
                prem = [self.support(quotient, pair), self.support(kernel, CoherencePair(0, m))]
                changed |= self.add_pos(node, pair, "R7", prem, {"direction": "quotient to extension"})
        if kernel.fin_fact is not None:
            for fid in list(node.pos):
                p = self.facts[fid].value
                m = min(p.m, inc(kernel.fin))
                if not m > p.n:
                    continue
                pair = CoherencePair(p.n, m)
                if self.holds(quotient, pair):
                    continue
                prem = [self.support(node, pair), kernel.fin_fact]
                changed |= self.add_pos(quotient, pair, "R7", prem, {"direction": "extension to quotient"})
        if kernel.fin_fact is not None and quotient.fin_fact is not None:
            changed |= self.set_fin(node, min(kernel.fin, quotient.fin), "FIN-EXT",
                                    [kernel.fin_fact, quotient.fin_fact])
        if node.fin_fact is not None and kernel.fin_fact is not None:
            changed |= self.set_fin(quotient, min(node.fin, inc(kernel.fin)), "FIN-EXT",
                                    [node.fin_fact, kernel.fin_fact])
        return changed

    # -- output ------------------------------------------------------------

    def factset(self, node: _Node) -> FactSet:
        return FactSet(frozenset(self.facts[f].value for f in node.pos),
                       frozenset(self.facts[f].value for f in node.neg), node.fin)

    def result(self) -> DerivationResult:
        return DerivationResult(
            self.factset(self.root),
            ProofTrace(list(self.facts)),
            {n.path: self.factset(n) for n in self.nodes},
            {n.path: str(n.original) for n in self.nodes},
            self.incomplete,
            dict(self.analyses),
            self,
        )


def derive_facts(expr: GroupExpr, budget: AnalysisBudget | None = None,
                 analyses: dict[SimplicialComplex, RaagAnalysis] | None = None) -> DerivationResult:
    """Saturate the rule set over ``expr``.

    ``analyses`` may supply precomputed :class:`RaagAnalysis` objects by
    complex, e.g. from a report run.
    """
    eng = _Engine(expr, budget or AnalysisBudget(), analyses)
    eng.run()
    return eng.result()


def resaturate(result: DerivationResult) -> int:
    """Run the rules again on a finished derivation; a fixpoint yields 0."""
    return result._engine.saturate()


# ---------------------------------------------------------------------------
# replay


def verify_derivation(result: DerivationResult, pi1_budget: int = DEFAULT_PI1_BUDGET) -> Verdict:
    """Re-check every fact: premises precede it and its rule's hypothesis holds.

    Hypotheses about complexes are recomputed from scratch: chordality
    witnesses and certificates, dimensions and Betti numbers, 𝒯ₙ
    certificates and obstruction connectivity.
    """
    eng = result._engine
    by_path = {n.path: n for n in eng.nodes}
    facts = result.trace.facts
    for f in facts:
        for p in f.premises:
            if not 0 <= p < f.id:
                return fail(f"fact {f.id}: premise {p} does not precede it")
        node = by_path.get(f.node)
        if node is None:
            return fail(f"fact {f.id}: unknown node {f.node}")
        v = _check_fact(f, node, facts, by_path, pi1_budget)
        if not v:
            return fail(f"fact {f.id} ({f.rule} on {f.node}): {v.reason}")
    return OK


def _prem(facts, f, i, kind, path=None):
    p = facts[f.premises[i]]
    if p.kind != kind or (path is not None and p.node != path):
        raise ValueError(f"premise {p.id} is not a {kind} fact on {path}")
    return p.value


def _check_fact(f: Fact, node: _Node, facts, by_path, pi1_budget) -> Verdict:
    e = node.expr
    kids = [c.path for c in node.children]
    v = f.value
    try:
        if f.rule == "ASSUMED":
            ok = isinstance(e, Assumed) and (
                (f.kind == "positive" and v in e.positive) or (f.kind == "negative" and v in e.negative)
                or (f.kind == "finiteness" and v == e.finiteness))
            return OK if ok else fail("not among the assumptions")
        if f.rule == "FIN-0":
            return OK if v == 0 else fail("F_0 fact must be 0")
        if f.rule == "FIN-BASE":
            return OK if isinstance(e, (Trivial, FreeAbelian, Free, Raag)) and v == INF else fail("not a base group")
        if f.rule == "FIN-EXT":
            vals = [facts[p].value for p in f.premises]
            if any(facts[p].kind != "finiteness" for p in f.premises):
                return fail("premises must be finiteness facts")
            if isinstance(e, (Extension, DirectProduct)) and f.node == node.path and all(
                    facts[p].node in kids for p in f.premises):
                return OK if v <= min(vals) else fail("exceeds the minimum over the factors")
            # quotient direction: premises are the extension and its kernel
            parent = by_path.get(facts[f.premises[0]].node)
            if (isinstance(parent.expr, Extension) and parent.children[1] is node
                    and facts[f.premises[1]].node == parent.children[0].path):
                return OK if v <= min(vals[0], inc(vals[1])) else fail("quotient bound violated")
            return fail("bad extension shape")
        if f.rule == "FIN-GOG":
            if not isinstance(e, (AmalgamOverRaag, GraphOfGroups)):
                return fail("not a graph of groups")
            nv = 2 if isinstance(e, AmalgamOverRaag) else len(e.vertex_groups)
            vals = [facts[p].value for p in f.premises]
            if [facts[p].node for p in f.premises] != kids:
                return fail("premises do not match the pieces")
            return OK if v <= min(vals[:nv] + [inc(x) for x in vals[nv:]]) else fail("bound violated")
        if f.rule == "R1":
            ok = v == CoherencePair(0, INF) and (
                isinstance(e, (Trivial, FreeAbelian)) or (isinstance(e, Free) and e.rank <= 1)
                or (isinstance(e, Raag) and e.complex.is_simplex_on(e.complex.mask)))
            return OK if ok else fail("group is not free abelian")
        if f.rule == "R2":
            if isinstance(e, Raag):
                return OK if v == CoherencePair(e.complex.dim + 1, INF) else fail("wrong dimension")
            return OK if isinstance(e, Free) and e.rank >= 2 and v == CoherencePair(1, INF) else fail("bad R2")
        if f.rule == "R3":
            return OK if _prem(facts, f, 0, "positive", f.node).implies(v) else fail("not implied")
        if f.rule == "R12":
            return OK if v.implies(_prem(facts, f, 0, "negative", f.node)) else fail("not implied")
        if f.rule == "R4":
            if not isinstance(e, Raag):
                return fail("not a RAAG")
            L = e.complex
            res = t1_certify(L)
            if f.kind == "positive":
                return OK if (res.certified and v == CoherencePair(1, INF)
                              and verify_t1_certificate(res.certificate, L)) else fail("not chordal")
            cyc = [L.vertices.index(x) for x in f.detail["induced_cycle"]]
            return OK if v == CoherencePair(1, 2) and verify_induced_cycle(L.graph, cyc) else fail("bad witness")
        if f.rule in ("R5", "R6"):
            if not isinstance(e, (AmalgamOverRaag, GraphOfGroups)):
                return fail("not a graph of groups")
            nv = 2 if isinstance(e, AmalgamOverRaag) else len(e.vertex_groups)
            if len(f.premises) != len(kids):
                return fail("premise count")
            e0 = 0 if v.n == 1 else 1
            want_v = v
            want_e = CoherencePair(e0, dec(v.m)) if f.rule == "R6" else CoherencePair(0, 1)
            if f.rule == "R5" and v != CoherencePair(1, 2):
                return fail("R5 concludes (1,2)")
            for i, path in enumerate(kids):
                got = _prem(facts, f, i, "positive", path)
                if got != (want_v if i < nv else want_e):
                    return fail(f"premise {i} states {got}")
            return OK
        if f.rule == "R7":
            if f.detail.get("direction") == "quotient to extension":
                if not isinstance(e, Extension):
                    return fail("not an extension")
                q = _prem(facts, f, 0, "positive", kids[1])
                k = _prem(facts, f, 1, "positive", kids[0])
                return OK if q == v and k == CoherencePair(0, v.m) else fail("hypotheses mismatch")
            g = facts[f.premises[0]]
            parent = by_path[g.node]
            if not (isinstance(parent.expr, Extension) and parent.children[1] is node):
                return fail("not the quotient of an extension")
            k = _prem(facts, f, 1, "finiteness", parent.children[0].path)
            ok = g.kind == "positive" and g.value == v and k >= dec(v.m)
            return OK if ok else fail("hypotheses mismatch")
        if f.rule == "R8":
            L = e.complex
            d = L.dim
            ok = d >= 2 and v == CoherencePair(d, INF) and betti_rational(L).betti[d] == 0
            return OK if ok else fail("top Betti number nonzero")
        if f.rule == "R9":
            if isinstance(e, DirectProduct) and all(isinstance(c, Free) and c.rank == 2 for c in e.factors):
                k = len(e.factors)
            else:
                return fail("not (F_2)^k")
            if f.kind == "positive":
                return OK if k and v == CoherencePair(k, INF) else fail("wrong rank")
            return OK if k and v.m == v.n + 1 and v.n < k else fail("wrong rank")
        if f.rule == "R10":
            L = e.complex
            cert = TnCertificate.from_dict(f.detail["certificate"], L)
            ok = v == CoherencePair(cert.n, INF) and verify_tn_certificate(cert, L, cert.n)
            return OK if ok else fail("certificate rejected")
        if f.rule == "R11":
            L = e.complex
            ob = f.detail["obstruction"]
            sub = full_subcomplex(L, ob["subset"])
            n = ob["n"]
            prof = connectivity_profile(sub, n, pi1_budget)
            ok = v == CoherencePair(n, n + 1) and prof[n].yes and prof[n + 1].no
            return OK if ok else fail("obstruction does not re-verify")
    except (KeyError, ValueError, IndexError, TypeError, AttributeError) as exc:
        return fail(f"malformed fact: {exc}")
    return fail(f"unknown rule {f.rule}")


__all__ = [
    "AnalysisBudget", "DerivationResult", "Fact", "ProofTrace", "RaagAnalysis",
    "analyse_raag", "derive_facts", "normalise", "resaturate",
    "verify_derivation",
]
