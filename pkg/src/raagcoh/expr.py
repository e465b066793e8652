"""Symbolic group expressions and their text syntax.

Grammar (whitespace is insignificant outside paths)::

    expr  := "1" | "Z" | "Z^" INT | "F(" INT ")"
           | "raag(" PATH ")"
           | "prod(" expr ("," expr)* ")"
           | "amalgam(" expr "," expr "," "over=" PATH ")"
           | "ext(" expr "," expr ")"               -- ext(kernel, quotient)
           | "gog([" exprs "],[" exprs "])"         -- vertex groups, edge groups
           | "assume(" NAME ",{" fact ("," fact)* "})"
    fact  := "pos(" N "," N ")" | "neg(" N "," N ")" | "fin(" N ")"
    N     := INT | "inf"

Complex files referenced by PATH are resolved relative to ``base_dir``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .coherence import INF, CoherencePair, ExtNat, to_json
from .complex import InputError, SimplicialComplex, full_subcomplex, load_complex


class ExprSyntaxError(InputError):
    def __init__(self, msg: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{line}:{col}: {msg}")
        self.line, self.col = line, col


class GroupExpr:
    """Base class of expression nodes."""

    def children(self) -> tuple[GroupExpr, ...]:
        return ()


@dataclass(frozen=True)
class Trivial(GroupExpr):
    def __str__(self):
        return "1"


@dataclass(frozen=True)
class FreeAbelian(GroupExpr):
    rank: int

    def __str__(self):
        return f"Z^{self.rank}"


@dataclass(frozen=True)
class Free(GroupExpr):
    rank: int

    def __str__(self):
        return f"F({self.rank})"


@dataclass(frozen=True)
class Raag(GroupExpr):
    complex: SimplicialComplex
    name: str = field(default="L", compare=False)

    def __post_init__(self):
        self.complex.require_flag()

    def __str__(self):
        return f"raag({self.name})"


@dataclass(frozen=True)
class DirectProduct(GroupExpr):
    factors: tuple[GroupExpr, ...]

    def children(self):
        return self.factors

    def __str__(self):
        return "prod(" + ",".join(map(str, self.factors)) + ")"


def _same_complex(a: SimplicialComplex, b: SimplicialComplex) -> bool:
    def faces(L):
        return {frozenset(L.labels(f)) for f in L.facets}
    return set(a.vertices) == set(b.vertices) and faces(a) == faces(b)


@dataclass(frozen=True)
class AmalgamOverRaag(GroupExpr):
    """A_left *_{A_over} A_right style amalgam; ``over`` is the edge complex."""

    left: GroupExpr
    right: GroupExpr
    over: SimplicialComplex
    over_name: str = field(default="L0", compare=False)

    def __post_init__(self):
        self.over.require_flag()
        for side in (self.left, self.right):
            if isinstance(side, Raag):
                L = side.complex
                missing = set(self.over.vertices) - set(L.vertices)
                if missing:
                    raise InputError(f"edge complex {self.over_name} has vertices {sorted(missing)} "
                                     f"outside {side.name}")
                if not _same_complex(full_subcomplex(L, list(self.over.vertices)), self.over):
                    raise InputError(f"edge complex {self.over_name} is not a full subcomplex of {side.name}")

    @property
    def edge_group(self) -> Raag:
        return Raag(self.over, self.over_name)

    def children(self):
        return (self.left, self.right, self.edge_group)

    def __str__(self):
        return f"amalgam({self.left},{self.right},over={self.over_name})"


@dataclass(frozen=True)
class GraphOfGroups(GroupExpr):
    vertex_groups: tuple[GroupExpr, ...]
    edge_groups: tuple[GroupExpr, ...]

    def __post_init__(self):
        if not self.vertex_groups:
            raise InputError("a graph of groups needs at least one vertex group")

    def children(self):
        return self.vertex_groups + self.edge_groups

    def __str__(self):
        v = ",".join(map(str, self.vertex_groups))
        e = ",".join(map(str, self.edge_groups))
        return f"gog([{v}],[{e}])"


@dataclass(frozen=True)
class Extension(GroupExpr):
    """1 → kernel → G → quotient → 1."""

    kernel: GroupExpr
    quotient: GroupExpr

    def children(self):
        return (self.kernel, self.quotient)

    def __str__(self):
        return f"ext({self.kernel},{self.quotient})"


@dataclass(frozen=True)
class Assumed(GroupExpr):
    label: str
    positive: tuple[CoherencePair, ...] = ()
    negative: tuple[CoherencePair, ...] = ()
    finiteness: ExtNat = 0

    def __str__(self):
        facts = [f"pos{p}" for p in self.positive] + [f"neg{p}" for p in self.negative]
        if self.finiteness:
            facts.append(f"fin({to_json(self.finiteness)})")
        return f"assume({self.label},{{{','.join(facts)}}})"


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str, loader: Callable[[str], SimplicialComplex]):
        self.text = text
        self.pos = 0
        self.loader = loader

    def error(self, msg: str, pos: int | None = None):
        raise ExprSyntaxError(msg, self.text, self.pos if pos is None else pos)

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.ws()
        return self.text.startswith(s, self.pos)

    def expect(self, s: str):
        self.ws()
        if not self.text.startswith(s, self.pos):
            found = self.text[self.pos:self.pos + 10] or "end of input"
            self.error(f"expected {s!r}, found {found!r}")
        self.pos += len(s)

    def name(self) -> str:
        self.ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] in "_"):
            self.pos += 1
        if start == self.pos:
            self.error("expected a name")
        return self.text[start:self.pos]

    def integer(self) -> int:
        self.ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def extnat(self) -> ExtNat:
        if self.peek("inf"):
            self.pos += 3
            return INF
        return self.integer()

    def path(self) -> tuple[str, int]:
        self.ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in "),":
            self.pos += 1
        raw = self.text[start:self.pos].strip()
        if not raw:
            self.error("expected a complex file path", start)
        return raw, start

    def load(self, path: str, at: int) -> SimplicialComplex:
        try:
            return self.loader(path)
        except InputError as exc:
            self.error(str(exc), at)

    def parse(self) -> GroupExpr:
        e = self.expr()
        self.ws()
        if self.pos != len(self.text):
            self.error("trailing input")
        return e

    def expr(self) -> GroupExpr:
        self.ws()
        start = self.pos
        if self.peek("1") and not self.text[self.pos + 1:self.pos + 2].isdigit():
            self.pos += 1
            return Trivial()
        word = self.name()
        if word == "Z":
            if self.peek("^"):
                self.pos += 1
                return FreeAbelian(self.integer())
            return FreeAbelian(1)
        if word == "F":
            self.expect("(")
            k = self.integer()
            self.expect(")")
            return Free(k)
        if word == "raag":
            self.expect("(")
            path, at = self.path()
            self.expect(")")
            L = self.load(path, at)
            try:
                return Raag(L, path)
            except InputError as exc:
                self.error(str(exc), at)
        if word == "prod":
            self.expect("(")
            factors = [self.expr()]
            while self.peek(","):
                self.pos += 1
                factors.append(self.expr())
            self.expect(")")
            return DirectProduct(tuple(factors))
        if word == "amalgam":
            self.expect("(")
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect(",")
            self.expect("over")
            self.expect("=")
            path, at = self.path()
            self.expect(")")
            over = self.load(path, at)
            try:
                return AmalgamOverRaag(left, right, over, path)
            except InputError as exc:
                self.error(str(exc), at)
        if word == "ext":
            self.expect("(")
            kernel = self.expr()
            self.expect(",")
            quotient = self.expr()
            self.expect(")")
            return Extension(kernel, quotient)
        if word == "gog":
            self.expect("(")
            verts = self.bracketed()
            self.expect(",")
            edges = self.bracketed()
            self.expect(")")
            try:
                return GraphOfGroups(tuple(verts), tuple(edges))
            except InputError as exc:
                self.error(str(exc), start)
        if word == "assume":
            self.expect("(")
            label = self.name()
            self.expect(",")
            return self.facts(label)
        self.error(f"unknown constructor {word!r}", start)

    def bracketed(self) -> list[GroupExpr]:
        self.expect("[")
        items = []
        if not self.peek("]"):
            items.append(self.expr())
            while self.peek(","):
                self.pos += 1
                items.append(self.expr())
        self.expect("]")
        return items

    def facts(self, label: str) -> Assumed:
        self.expect("{")
        pos, neg, fin = [], [], 0
        while not self.peek("}"):
            at = self.pos
            kind = self.name()
            self.expect("(")
            if kind in ("pos", "neg"):
                n = self.extnat()
                self.expect(",")
                m = self.extnat()
                try:
                    pair = CoherencePair(n, m)
                except ValueError as exc:
                    self.error(str(exc), at)
                (pos if kind == "pos" else neg).append(pair)
            elif kind == "fin":
                fin = max(fin, self.extnat())
            else:
                self.error(f"unknown fact {kind!r}; expected pos, neg or fin", at)
            self.expect(")")
            if not self.peek("}"):
                self.expect(",")
        self.expect("}")
        self.expect(")")
        return Assumed(label, tuple(pos), tuple(neg), fin)


def parse_expr(text: str, base_dir=None,
               loader: Callable[[str], SimplicialComplex] | None = None) -> GroupExpr:
    """Parse a group expression; complex paths resolve against ``base_dir``."""
    if loader is None:
        base = Path(base_dir) if base_dir is not None else Path.cwd()

        def loader(p: str) -> SimplicialComplex:
            return load_complex(base / p)
    return _Parser(text, loader).parse()
