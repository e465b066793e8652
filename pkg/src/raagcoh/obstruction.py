"""Scan full subcomplexes for Bestvina–Brady obstructions.

If A_L is (n, n+1)-coherent then every (n-1)-connected full subcomplex
of L is n-connected.  A full subcomplex that is certifiably
(n-1)-connected but certifiably not n-connected therefore shows A_L is
not (n, n+1)-coherent.  The absence of obstructions proves nothing.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, islice

from .bits import popcount
from .complex import InputError, SimplicialComplex, full_subcomplex
from .connectivity import connectivity_profile
from .fundamental_group import DEFAULT_PI1_BUDGET
from .verdict import TriStatus

DEFAULT_SUBSET_CAP = 1 << 20


@dataclass(frozen=True)
class Obstruction:
    subset: int
    n: int
    lower: TriStatus   # (n-1)-connected: yes
    upper: TriStatus   # n-connected: no

    def to_dict(self, L: SimplicialComplex) -> dict:
        return {
            "subset": L.labels(self.subset),
            "n": self.n,
            "connected_below": self.lower.to_dict(),
            "connected_at": self.upper.to_dict(),
        }


@dataclass(frozen=True)
class ScanReport:
    n: int
    obstructions: tuple[Obstruction, ...]
    candidates: tuple[int, ...]
    scanned: int
    pruned: int
    exhaustive: bool
    total_subsets: int = field(default=0)

    @property
    def found(self) -> bool:
        return bool(self.obstructions)

    def to_dict(self, L: SimplicialComplex) -> dict:
        return {
            "n": self.n,
            "obstructions": [o.to_dict(L) for o in self.obstructions],
            "candidates": [L.labels(c) for c in self.candidates],
            "scanned": self.scanned,
            "pruned": self.pruned,
            "exhaustive": self.exhaustive,
            "total_subsets": self.total_subsets,
            "verdict": ("not (%d,%d)-coherent" % (self.n, self.n + 1)) if self.obstructions
            else "no obstruction found",
        }


def subset_order(nverts: int):
    """All vertex subsets: larger first, then lexicographic by index tuple."""
    for size in range(nverts, -1, -1):
        for idx in combinations(range(nverts), size):
            yield sum(1 << i for i in idx)


def classify(L: SimplicialComplex, subset: int, n: int, pi1_budget: int):
    """('obstruction' | 'candidate' | 'clear', lower, upper) for one full subcomplex."""
    profile = connectivity_profile(full_subcomplex(L, subset), n, pi1_budget)
    lower, upper = profile[n], profile[n + 1]
    if lower.yes and upper.no:
        return "obstruction", lower, upper
    if (lower.unknown and not upper.yes) or (lower.yes and upper.unknown):
        return "candidate", lower, upper
    return "clear", lower, upper


def scan_obstructions(L: SimplicialComplex, n: int, max_subsets: int = DEFAULT_SUBSET_CAP,
                      pi1_budget: int = DEFAULT_PI1_BUDGET, workers: int = 1,
                      prune: bool = True) -> ScanReport:
    """Enumerate full subcomplexes of L looking for obstructions at level n.

    Subsets are visited largest first (so L itself comes first) and then
    lexicographically; at most ``max_subsets`` are visited.  With
    ``prune`` set, subsets with fewer than n+2 vertices are counted but
    not classified: such a complex cannot be (n-1)-connected without
    being n-connected.  Results do not depend on ``workers``.
    """
    L.require_flag()
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InputError("obstruction scan needs an integer n ≥ 1")
    if max_subsets < 1:
        raise InputError("subset cap must be positive")
    total = 1 << L.n
    chosen = list(islice(subset_order(L.n), max_subsets))
    todo = [s for s in chosen if not prune or popcount(s) >= n + 2]

    def work(s):
        return s, classify(L, s, n, pi1_budget)

    if workers > 1 and len(todo) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(work, todo))
    else:
        results = [work(s) for s in todo]

    obstructions = []
    candidates = []
    for s, (kind, lower, upper) in results:  # already in enumeration order
        if kind == "obstruction":
            obstructions.append(Obstruction(s, n, lower, upper))
        elif kind == "candidate":
            candidates.append(s)
    return ScanReport(n, tuple(obstructions), tuple(candidates), len(chosen),
                      len(chosen) - len(todo), len(chosen) == total, total)


def verify_obstruction(L: SimplicialComplex, ob: Obstruction, pi1_budget: int = DEFAULT_PI1_BUDGET) -> bool:
    """Recompute both connectivity statuses from scratch."""
    sub = full_subcomplex(L, ob.subset)
    profile = connectivity_profile(sub, ob.n, pi1_budget)
    return profile[ob.n].yes and profile[ob.n + 1].no
