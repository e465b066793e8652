"""(n, m)-coherence facts over the extended naturals ℕ ∪ {∞}.

A group is (n, m)-coherent when every subgroup of type Fₙ is of type Fₘ.
Positive facts are closed downwards: (n, m) implies (n', m') whenever
n ≤ n' < m' ≤ m.  Negative facts are closed the other way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Union

INF = math.inf
ExtNat = Union[int, float]


def check_extnat(x) -> ExtNat:
    if x == INF:
        return INF
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise ValueError(f"{x!r} is not an extended natural number")
    return x


def dec(x: ExtNat) -> ExtNat:
    """x - 1 with ∞ - 1 = ∞ (callers ensure x ≥ 1)."""
    return INF if x == INF else x - 1


def inc(x: ExtNat) -> ExtNat:
    return INF if x == INF else x + 1


def to_json(x: ExtNat):
    return "inf" if x == INF else int(x)


def from_json(x) -> ExtNat:
    if x in ("inf", "∞", "infinity"):
        return INF
    return check_extnat(x)


@dataclass(frozen=True, order=True)
class CoherencePair:
    n: ExtNat
    m: ExtNat

    def __post_init__(self):
        check_extnat(self.n)
        check_extnat(self.m)
        if not self.n < self.m:
            raise ValueError(f"coherence pair needs n < m, got ({self.n}, {self.m})")
        if self.n == INF:  # pragma: no cover - excluded by n < m
            raise ValueError("n must be finite")

    def implies(self, other: CoherencePair) -> bool:
        """Positive (n, m) gives positive ``other``; equivalently negative ``other`` gives negative self."""
        return self.n <= other.n and other.m <= self.m

    def to_json(self) -> list:
        return [to_json(self.n), to_json(self.m)]

    @classmethod
    def from_json(cls, data) -> CoherencePair:
        n, m = data
        return cls(from_json(n), from_json(m))

    def __str__(self):
        return f"({to_json(self.n)},{to_json(self.m)})"


def maximal_pairs(pairs: Iterable[CoherencePair]) -> frozenset[CoherencePair]:
    pairs = set(pairs)
    return frozenset(p for p in pairs if not any(q != p and q.implies(p) for q in pairs))


def minimal_pairs(pairs: Iterable[CoherencePair]) -> frozenset[CoherencePair]:
    pairs = set(pairs)
    return frozenset(p for p in pairs if not any(q != p and p.implies(q) for q in pairs))


@dataclass(frozen=True)
class FactSet:
    """Coherence facts about one group.

    ``positive`` holds the maximal known coherent pairs and ``negative``
    the minimal known non-coherent pairs; the full sets are their
    closures.  ``finiteness`` is a certified lower bound k for "the group
    is of type F_k".
    """

    positive: frozenset[CoherencePair] = frozenset()
    negative: frozenset[CoherencePair] = frozenset()
    finiteness: ExtNat = 0

    def __post_init__(self):
        object.__setattr__(self, "positive", maximal_pairs(self.positive))
        object.__setattr__(self, "negative", minimal_pairs(self.negative))
        check_extnat(self.finiteness)

    def holds(self, pair: CoherencePair) -> bool:
        return any(p.implies(pair) for p in self.positive)

    def refuted(self, pair: CoherencePair) -> bool:
        return any(pair.implies(q) for q in self.negative)

    def max_m(self, n: ExtNat) -> ExtNat | None:
        """Largest m with (n, m) known to hold, or None."""
        best = None
        for p in self.positive:
            if p.n <= n < p.m and (best is None or p.m > best):
                best = p.m
        return best

    def to_json(self) -> dict:
        return {
            "positive": [p.to_json() for p in sorted(self.positive)],
            "negative": [p.to_json() for p in sorted(self.negative)],
            "finiteness": to_json(self.finiteness),
        }

    @classmethod
    def from_json(cls, data) -> FactSet:
        return cls(frozenset(CoherencePair.from_json(p) for p in data.get("positive", [])),
                   frozenset(CoherencePair.from_json(p) for p in data.get("negative", [])),
                   from_json(data.get("finiteness", 0)))


@dataclass(frozen=True)
class Consistency:
    ok: bool
    positive: CoherencePair | None = None
    negative: CoherencePair | None = None
    traces: tuple = field(default=(), compare=False)

    def __bool__(self) -> bool:
        return self.ok


def check_consistency(facts: FactSet, trace=None) -> Consistency:
    """Find a positive fact whose closure contains a negative one.

    ``trace`` is an optional callable mapping ``("positive"|"negative",
    pair)`` to a derivation that is attached to a contradiction.
    """
    for p in sorted(facts.positive):
        for q in sorted(facts.negative):
            if p.implies(q):
                traces = (trace("positive", p), trace("negative", q)) if trace else ()
                return Consistency(False, p, q, traces)
    return Consistency(True)
