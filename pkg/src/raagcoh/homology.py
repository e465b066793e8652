"""Exact simplicial homology over ℚ and ℤ.

Boundary matrices are stored column-wise as ``{row: coefficient}`` dicts.
Ranks over ℚ use fraction-free column reduction (integer combinations,
rows rescaled by their content); integral homology uses a sparse Smith
normal form that always pivots on an entry of least magnitude.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from .complex import SimplicialComplex

Column = dict[int, int]


@dataclass(frozen=True)
class ChainComplexData:
    """Oriented simplices per degree and the boundary maps between them.

    ``boundary[k]`` maps k-simplices to (k-1)-simplices; ``boundary[0]`` is
    the augmentation onto the empty simplex, so reduced homology comes for
    free.
    """

    simplices: tuple[tuple[tuple[int, ...], ...], ...]
    boundary: tuple[tuple[Column, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1


def chain_complex(L: SimplicialComplex, check: bool = True) -> ChainComplexData:
    simplices = tuple(L.simplices(k) for k in range(L.dim + 1))
    boundary = []
    for k, cells in enumerate(simplices):
        if k == 0:
            boundary.append(tuple({0: 1} for _ in cells))
            continue
        index = {s: i for i, s in enumerate(simplices[k - 1])}
        cols = []
        for s in cells:
            col = {}
            for i in range(k + 1):
                col[index[s[:i] + s[i + 1:]]] = -1 if i & 1 else 1
            cols.append(col)
        boundary.append(tuple(cols))
    data = ChainComplexData(simplices, tuple(boundary))
    if check:
        for k in range(1, len(boundary)):
            if not _composes_to_zero(boundary[k - 1], boundary[k]):
                raise AssertionError(f"boundary of boundary is nonzero in degree {k}")
    return data


def _composes_to_zero(lower: tuple[Column, ...], upper: tuple[Column, ...]) -> bool:
    for col in upper:
        acc: dict[int, int] = {}
        for r, v in col.items():
            for r2, w in lower[r].items():
                acc[r2] = acc.get(r2, 0) + v * w
        if any(acc.values()):
            return False
    return True


def rank_q(columns) -> int:
    """Rank over ℚ of a sparse integer matrix given by columns."""
    pivots: dict[int, Column] = {}
    rank = 0
    for col in columns:
        v = {r: x for r, x in col.items() if x}
        while v:
            r = max(v)
            p = pivots.get(r)
            if p is None:
                pivots[r] = v
                rank += 1
                break
            a, b = p[r], v[r]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {k: a * x for k, x in v.items()}
            for k, x in p.items():
                y = new.get(k, 0) - b * x
                if y:
                    new[k] = y
                else:
                    new.pop(k, None)
            content = 0
            for x in new.values():
                content = gcd(content, x)
            if content > 1:
                new = {k: x // content for k, x in new.items()}
            v = new
    return rank


def smith_diagonal(columns) -> list[int]:
    """Nonzero diagonal of a Smith form (not yet in divisibility order)."""
    cols: dict[int, Column] = {}
    rows: dict[int, Column] = {}
    for c, col in enumerate(columns):
        for r, v in col.items():
            if v:
                cols.setdefault(c, {})[r] = v
                rows.setdefault(r, {})[c] = v

    def set_entry(r: int, c: int, v: int) -> None:
        if v:
            rows.setdefault(r, {})[c] = v
            cols.setdefault(c, {})[r] = v
        else:
            rows[r].pop(c, None)
            cols[c].pop(r, None)
            if not rows[r]:
                del rows[r]
            if not cols[c]:
                del cols[c]

    def row_axpy(dst: int, src: int, q: int) -> None:
        for c, v in list(rows[src].items()):
            set_entry(dst, c, rows.get(dst, {}).get(c, 0) - q * v)

    def col_axpy(dst: int, src: int, q: int) -> None:
        for r, v in list(cols[src].items()):
            set_entry(r, dst, cols.get(dst, {}).get(r, 0) - q * v)

    def least_entry(candidates):
        return min(candidates, key=lambda t: (abs(t[2]), len(rows[t[0]]) + len(cols[t[1]]), t[0], t[1]))

    diag = []
    while rows:
        r, c, p = least_entry((r, c, v) for r, rc in rows.items() for c, v in rc.items())
        while True:
            for r2, v in list(cols[c].items()):
                if r2 != r:
                    row_axpy(r2, r, v // p)
            for c2, v in list(rows[r].items()):
                if c2 != c:
                    col_axpy(c2, c, v // p)
            rest = [(r2, c, v) for r2, v in cols[c].items() if r2 != r]
            rest += [(r, c2, v) for c2, v in rows[r].items() if c2 != c]
            if not rest:
                break
            r, c, p = least_entry(rest)
        diag.append(abs(p))
        set_entry(r, c, 0)
    return diag


def invariant_factors(diagonal) -> list[int]:
    """Normalise a diagonal to invariant factors d₁ | d₂ | … ."""
    d = sorted(diagonal)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            d[i], d[j] = g, d[i] * d[j] // g
    return d


@dataclass(frozen=True)
class HomologySummary:
    """Homology of a complex in degrees ``0..dim``.

    ``betti`` are unreduced ranks, ``reduced_betti`` the reduced ones
    (they differ only in degree 0).  ``torsion`` lists the nontrivial
    invariant factors per degree and is ``None`` for rational homology.
    The empty complex has no degrees; its reduced homology lives in
    degree -1 and is reported by ``empty``.
    """

    coefficients: str
    simplex_counts: tuple[int, ...]
    betti: tuple[int, ...]
    reduced_betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...] | None = None
    empty: bool = field(default=False)

    @property
    def dim(self) -> int:
        return len(self.simplex_counts) - 1

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))

    def reduced_vanishes(self, k: int) -> bool:
        """True when reduced homology in degree ``k`` is zero (over the coefficients used)."""
        if k < 0:
            return not self.empty if k == -1 else True
        if k > self.dim:
            return True
        if self.reduced_betti[k]:
            return False
        return not (self.torsion and self.torsion[k])

    def to_dict(self) -> dict:
        out = {
            "coefficients": self.coefficients,
            "simplex_counts": list(self.simplex_counts),
            "betti": list(self.betti),
            "reduced_betti": list(self.reduced_betti),
        }
        if self.torsion is not None:
            out["torsion"] = [list(t) for t in self.torsion]
        return out


def _assemble(coeff, counts, ranks, torsion=None) -> HomologySummary:
    dim = len(counts) - 1
    betti = tuple(counts[k] - (ranks[k] if k > 0 else 0) - (ranks[k + 1] if k < dim else 0)
                  for k in range(dim + 1))
    reduced = betti[:1] and (betti[0] - 1,) + betti[1:]
    return HomologySummary(coeff, tuple(counts), betti, tuple(reduced), torsion, empty=dim < 0)


@lru_cache(maxsize=8192)
def betti_rational(L: SimplicialComplex) -> HomologySummary:
    """Rational Betti numbers (reduced and unreduced) in degrees 0..dim L."""
    cc = chain_complex(L)
    counts = [len(s) for s in cc.simplices]
    ranks = [rank_q(cols) for cols in cc.boundary]
    return _assemble("Q", counts, ranks)


@lru_cache(maxsize=8192)
def integral_homology(L: SimplicialComplex) -> HomologySummary:
    """Integral homology: free ranks and torsion invariant factors per degree."""
    cc = chain_complex(L)
    counts = [len(s) for s in cc.simplices]
    factors = [invariant_factors(smith_diagonal(cols)) for cols in cc.boundary]
    ranks = [len(f) for f in factors]
    dim = len(counts) - 1
    torsion = tuple(tuple(d for d in factors[k + 1] if d > 1) if k < dim else ()
                    for k in range(dim + 1))
    return _assemble("Z", counts, ranks, torsion)
