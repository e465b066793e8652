"""k-connectivity of complexes and finiteness types of Bestvina–Brady groups.

A complex is k-connected when it is nonempty, connected and its
homotopy groups vanish through degree k.  For k ≥ 1 this is certified
via Hurewicz: a trivial π₁ plus vanishing reduced integral homology
through degree k.  Nonvanishing homology always refutes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complex import SimplicialComplex, connected_components
from .fundamental_group import DEFAULT_PI1_BUDGET, h1_evidence, pi1_trivial
from .homology import integral_homology
from .verdict import Tri, TriStatus


def _homology_evidence(h, k: int) -> dict:
    return {"degree": k, "rank": h.reduced_betti[k], "torsion": list(h.torsion[k])}


def connectivity_profile(L: SimplicialComplex, kmax: int,
                         pi1_budget: int = DEFAULT_PI1_BUDGET) -> list[TriStatus]:
    """Statuses of "L is k-connected" for k = -1, 0, …, kmax (index k+1)."""
    out: list[TriStatus] = []
    if L.n == 0:
        return [TriStatus(Tri.NO, {"reason": "empty complex"}) for _ in range(kmax + 2)]
    out.append(TriStatus(Tri.YES, {"reason": "nonempty"}))
    if kmax < 0:
        return out
    ncomp = len(connected_components(L))
    if ncomp > 1:
        no = TriStatus(Tri.NO, {"reason": "disconnected", "components": ncomp})
        return out + [no] * (kmax + 1)
    out.append(TriStatus(Tri.YES, {"reason": "connected"}))
    if kmax < 1:
        return out

    h = integral_homology(L)
    first_bad = next((i for i in range(1, min(kmax, L.dim) + 1) if not h.reduced_vanishes(i)), None)
    if h1_evidence(L) is not None:
        pi1 = TriStatus(Tri.NO, {"reason": "abelianisation nontrivial"})
    else:
        pi1 = pi1_trivial(L, pi1_budget)
    for k in range(1, kmax + 1):
        if first_bad is not None and k >= first_bad:
            out.append(TriStatus(Tri.NO, {"reason": "reduced integral homology nonzero",
                                          **_homology_evidence(h, first_bad)}))
        elif pi1.yes:
            out.append(TriStatus(Tri.YES, {
                "reason": "simply connected with vanishing reduced integral homology",
                "through_degree": k,
                "pi1": pi1.evidence,
            }))
        else:
            out.append(TriStatus(Tri.UNKNOWN, {"reason": "π₁ triviality undecided", "pi1": pi1.evidence}))
    return out


def connectivity_status(L: SimplicialComplex, k: int, pi1_budget: int = DEFAULT_PI1_BUDGET) -> TriStatus:
    """Is L k-connected?  ``k = -1`` asks for nonemptiness."""
    if k < -1:
        raise ValueError("k must be at least -1")
    return connectivity_profile(L, k, pi1_budget)[k + 1]


@dataclass(frozen=True)
class BBFiniteness:
    """Finiteness types of the Bestvina–Brady group H_L for n = 1..max_n.

    ``statuses[n-1]`` says whether H_L is of type Fₙ.  ``f_infinity`` is
    set when L is certified contractible (simply connected, acyclic), so
    H_L is of type F_∞.
    """

    max_n: int
    statuses: tuple[TriStatus, ...]
    f_infinity: bool

    def status(self, n: int) -> TriStatus:
        return self.statuses[n - 1]

    def greatest_known_type(self) -> int | float:
        if self.f_infinity:
            return float("inf")
        best = 0
        for n, s in enumerate(self.statuses, start=1):
            if not s.yes:
                break
            best = n
        return best

    def to_dict(self) -> dict:
        return {
            "max_n": self.max_n,
            "f_infinity": self.f_infinity,
            "types": [{"n": n, "status": s.value.value} for n, s in enumerate(self.statuses, start=1)],
        }


def bb_finiteness(L: SimplicialComplex, max_n: int, pi1_budget: int = DEFAULT_PI1_BUDGET) -> BBFiniteness:
    """H_L is of type Fₙ iff L is (n-1)-connected."""
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    reach = max(max_n - 1, L.dim, 1)
    profile = connectivity_profile(L, reach, pi1_budget)
    statuses = tuple(profile[n] for n in range(1, max_n + 1))  # (n-1)-connected sits at index n
    f_inf = all(s.yes for s in profile)
    return BBFiniteness(max_n, statuses, f_inf)
