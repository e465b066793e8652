"""Edge-path presentations of π₁ and a bounded Tietze simplifier.

Words are tuples of nonzero ints: ``+(i+1)`` is generator ``i`` and
``-(i+1)`` its inverse.  Triviality answers are sound: Yes only with a
replayable elimination transcript, No only when the abelianisation
(first integral homology) is nonzero.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .bits import iter_bits
from .complex import InputError, SimplicialComplex, connected_components
from .homology import integral_homology
from .verdict import Tri, TriStatus

DEFAULT_PI1_BUDGET = 10_000

Word = tuple[int, ...]


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        k = len(self.generators)
        for r in self.relators:
            for x in r:
                if x == 0 or abs(x) > k:
                    raise InputError(f"relator letter {x} references no generator")

    def exponent_matrix(self) -> list[list[int]]:
        """Rows = relators, columns = generators, entries = exponent sums."""
        rows = []
        for r in self.relators:
            row = [0] * len(self.generators)
            for x in r:
                row[abs(x) - 1] += 1 if x > 0 else -1
            rows.append(row)
        return rows


def free_reduce(word) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word) -> Word:
    w = free_reduce(word)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def invert(word) -> Word:
    return tuple(-x for x in reversed(word))


def canonical(word) -> Word:
    """Least rotation of the word or its inverse; identifies equivalent relators."""
    w = cyclic_reduce(word)
    if not w:
        return w
    cands = []
    for v in (w, invert(w)):
        cands.extend(v[i:] + v[:i] for i in range(len(v)))
    return min(cands)


def substitute(word, gen: int, value: Word) -> Word:
    """Replace generator ``gen`` (1-based) by ``value`` and its inverse by the inverse."""
    inv = invert(value)
    out: list[int] = []
    for x in word:
        if x == gen:
            out.extend(value)
        elif x == -gen:
            out.extend(inv)
        else:
            out.append(x)
    return cyclic_reduce(out)


def spanning_tree_edges(L: SimplicialComplex) -> set[tuple[int, int]]:
    """Breadth-first spanning tree from the least vertex, as (u, v) with u < v."""
    adj = L.graph.adj
    if L.n == 0:
        return set()
    seen = 1
    tree = set()
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in iter_bits(adj[u] & ~seen):
            seen |= 1 << v
            tree.add((min(u, v), max(u, v)))
            queue.append(v)
    return tree


def edge_path_presentation(L: SimplicialComplex) -> Presentation:
    """Generators are edges off a BFS spanning tree; each triangle gives a relator."""
    tree = spanning_tree_edges(L)
    gens = [e for e in L.simplices(1) if e not in tree]
    gid = {e: i + 1 for i, e in enumerate(gens)}

    def letter(u, v):
        if u < v:
            g = gid.get((u, v))
            return g and (g,)
        g = gid.get((v, u))
        return g and (-g,)

    relators = []
    for a, b, c in L.simplices(2):
        w = (letter(a, b) or ()) + (letter(b, c) or ()) + (letter(c, a) or ())
        relators.append(w)
    names = tuple(f"{L.vertices[u]}-{L.vertices[v]}" for u, v in gens)
    return Presentation(names, tuple(relators))


@dataclass
class SimplifyResult:
    trivial: bool
    transcript: list[dict]
    moves: int
    remaining_generators: int
    remaining_relators: tuple[Word, ...]
    exhausted_budget: bool


def _normalise(relators) -> list[Word]:
    out = {}
    for r in relators:
        c = canonical(r)
        if c:
            out.setdefault(c, c)
    return sorted(out.values(), key=lambda w: (len(w), w))


def simplify(p: Presentation, budget: int = DEFAULT_PI1_BUDGET) -> SimplifyResult:
    """Greedy Tietze simplification by generator elimination.

    A generator occurring exactly once in some relator is solved for and
    substituted away.  Eliminations through the shortest such relator
    go first, so length-one and length-two relators (which never grow
    other relators) are always used before longer ones.  Each
    elimination and each relator rewrite costs one move.
    """
    active = set(range(1, len(p.generators) + 1))
    relators = _normalise(p.relators)
    transcript: list[dict] = []
    moves = 0
    while active:
        best = None
        for ri, r in enumerate(relators):
            counts: dict[int, int] = {}
            for x in r:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            for g, cnt in counts.items():
                if cnt == 1:
                    usage = sum(1 for other in relators if g in other or -g in other)
                    key = (len(r), usage, g, ri)
                    if best is None or key < best[0]:
                        best = (key, ri, g)
        if best is None:
            break
        _, ri, g = best
        r = relators[ri]
        pos = next(i for i, x in enumerate(r) if abs(x) == g)
        rot = r[pos:] + r[:pos]
        rest = rot[1:]
        value = invert(rest) if rot[0] == g else rest
        rewritten = [substitute(other, g, value) for i, other in enumerate(relators) if i != ri]
        moves += 1 + sum(1 for i, other in enumerate(relators) if i != ri and (g in other or -g in other))
        transcript.append({"generator": g, "relator": list(r), "value": list(value)})
        active.discard(g)
        relators = _normalise(rewritten)
        if moves > budget:
            return SimplifyResult(False, transcript, moves, len(active), tuple(relators), True)
    return SimplifyResult(not active, transcript, moves, len(active), tuple(relators), False)


def replay_transcript(p: Presentation, transcript) -> bool:
    """Independently re-apply an elimination transcript; True iff it trivialises ``p``."""
    active = set(range(1, len(p.generators) + 1))
    relators = [cyclic_reduce(r) for r in p.relators]
    for move in transcript:
        g = move["generator"]
        r = tuple(move["relator"])
        value = tuple(move["value"])
        if g not in active:
            return False
        if canonical(r) not in {canonical(x) for x in relators if x}:
            return False
        if sum(1 for x in r if abs(x) == g) != 1:
            return False
        if any(abs(x) == g or abs(x) not in active for x in value):
            return False
        # r must say g = value: substituting value for g in r gives the trivial word
        if substitute(r, g, value):
            return False
        active.remove(g)
        target = canonical(r)
        dropped = False
        new = []
        for x in relators:
            if not dropped and x and canonical(x) == target:
                dropped = True
                continue
            new.append(substitute(x, g, value))
        relators = new
    return not active and all(not cyclic_reduce(x) for x in relators)


def _require_connected(L: SimplicialComplex) -> None:
    if L.n == 0:
        raise InputError("π₁ needs a nonempty complex")
    if len(connected_components(L)) != 1:
        raise InputError("π₁ needs a connected complex")


def h1_evidence(L: SimplicialComplex) -> dict | None:
    """Description of H₁(L; ℤ) when it is nonzero, else None."""
    h = integral_homology(L)
    if h.reduced_vanishes(1):
        return None
    return {"H1_rank": h.reduced_betti[1], "H1_torsion": list(h.torsion[1])}


def pi1_trivial(L: SimplicialComplex, budget: int = DEFAULT_PI1_BUDGET) -> TriStatus:
    """Sound three-valued test for simple connectivity of a connected complex."""
    _require_connected(L)
    h1 = h1_evidence(L)
    if h1 is not None:
        return TriStatus(Tri.NO, {"reason": "abelianisation nontrivial", **h1})
    p = edge_path_presentation(L)
    res = simplify(p, budget)
    if res.trivial:
        return TriStatus(Tri.YES, {
            "reason": "presentation simplified to the trivial group",
            "generators": list(p.generators),
            "relators": [list(r) for r in p.relators],
            "transcript": res.transcript,
        })
    return TriStatus(Tri.UNKNOWN, {
        "reason": "move budget exhausted" if res.exhausted_budget else "no eliminable generator",
        "budget": budget,
        "moves": res.moves,
        "remaining_generators": res.remaining_generators,
        "remaining_relators": len(res.remaining_relators),
    })
