"""End-to-end analysis of a flag complex and its report formats."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .calculus import AnalysisBudget, analyse_raag, derive_facts
from .chordal import chordality
from .coherence import INF, CoherencePair
from .complex import InputError, SimplicialComplex, load_complex
from .connectivity import bb_finiteness
from .expr import Raag

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_TRUNCATED = 2


@dataclass
class AnalysisReport:
    source: str
    complex: dict
    chordality: dict
    t1: dict
    homology: dict
    bb_finiteness: dict
    tn: dict
    bb: dict
    calculus: dict
    status: list = field(default_factory=list)
    complete: bool = True

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.complete else EXIT_TRUNCATED

    def row(self, n: int) -> dict:
        return next(r for r in self.status if r["n"] == n)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> AnalysisReport:
        return cls(**data)

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    def render_text(self) -> str:
        c = self.complex
        lines = [
            f"complex {self.source}: {len(c['vertices'])} vertices, dim {c['dimension']}, "
            f"f-vector {c['f_vector']}, {'flag' if c['flag'] else 'not flag'}",
        ]
        if self.chordality["chordal"]:
            lines.append("1-skeleton chordal; elimination order " + " ".join(self.chordality["order"]))
        else:
            lines.append("1-skeleton not chordal; induced cycle " + " ".join(self.chordality["cycle"]))
        h = self.homology
        lines.append(f"reduced Betti numbers {h['reduced_betti']}"
                     + (f", torsion {h['torsion']}" if any(h.get("torsion") or []) else ""))
        types = ", ".join(f"F_{t['n']}: {t['status']}" for t in self.bb_finiteness["types"])
        lines.append(f"Bestvina-Brady group: {types}"
                     + (" (F_inf)" if self.bb_finiteness["f_infinity"] else ""))
        for n, r in sorted(self.tn.items(), key=lambda kv: int(kv[0])):
            lines.append(f"T_{n}: {r['status']} ({r['nodes_explored']} nodes)")
        for n, s in sorted(self.bb.items(), key=lambda kv: int(kv[0])):
            extra = "" if s["exhaustive"] else f" [partial: {s['scanned']}/{s['total_subsets']}]"
            lines.append(f"obstructions at n={n}: {len(s['obstructions'])}{extra}")
        lines.append("status:")
        for r in self.status:
            if r["status"] == "unknown":
                lines.append(f"  n={r['n']}: unknown")
            else:
                pair = "(%s,%s)" % tuple(r["pair"])
                lines.append(f"  n={r['n']}: {r['status']} {pair} by {r['rule']} (fact {r['fact']})")
        if not self.complete:
            lines.append("note: some searches hit their budget; the report is partial")
        return "\n".join(lines) + "\n"


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _labels(L: SimplicialComplex, idx) -> list[str]:
    return [L.vertices[i] for i in idx]


def status_table(derivation, max_n: int) -> list[dict]:
    """Per-level verdict: positive (n,∞), negative (n,n+1) or unknown, with the supporting fact."""
    eng = derivation._engine
    rows = []
    for n in range(0, max_n + 1):
        row = {"n": n, "status": "unknown"}
        for kind, pair in (("positive", CoherencePair(n, INF)), ("negative", CoherencePair(n, n + 1))):
            fid = derivation.fact_for(kind, pair)
            if fid is not None:
                row = {"n": n, "status": kind, "pair": pair.to_json(), "fact": fid,
                       "rule": eng.facts[fid].rule}
                break
        rows.append(row)
    return rows


def analyze(source, max_n: int | None = None, budget: AnalysisBudget | None = None,
            workers: int | None = None) -> AnalysisReport:
    """Run every analysis on one flag complex (a path or a :class:`SimplicialComplex`)."""
    if isinstance(source, SimplicialComplex):
        L, name = source, "<memory>"
    else:
        L, name = load_complex(source), Path(source).name
    L.require_flag()
    budget = budget or AnalysisBudget()
    if max_n is not None or workers is not None:
        budget = AnalysisBudget(max_n if max_n is not None else budget.max_n, budget.tn, budget.max_subsets,
                                budget.pi1_budget, budget.max_passes,
                                workers if workers is not None else budget.workers)
    if budget.max_n is not None and budget.max_n < 1:
        raise InputError("max-n must be at least 1")
    levels = budget.levels(L)
    analysis = analyse_raag(L, budget)
    derivation = derive_facts(Raag(L, name), budget, {L: analysis})
    consistency = derivation.consistency()
    if not consistency:
        raise RuntimeError(f"contradictory facts {consistency.positive} and {consistency.negative}")

    ch = chordality(L.graph.adj, L.mask)
    t1 = analysis.t1
    report = AnalysisReport(
        source=name,
        complex={"vertices": list(L.vertices), "facets": [L.labels(f) for f in L.facets],
                 "dimension": L.dim, "f_vector": list(L.f_vector()), "flag": L.is_flag},
        chordality={"chordal": ch.chordal,
                    "order": _labels(L, ch.order) if ch.chordal else None,
                    "cycle": None if ch.chordal else _labels(L, ch.cycle)},
        t1={"certified": t1.certified,
            "certificate": t1.certificate.to_dict(L) if t1.certified else None,
            "cycle": None if t1.certified else _labels(L, t1.cycle)},
        homology=analysis.homology.to_dict(),
        bb_finiteness=bb_finiteness(L, levels, budget.pi1_budget).to_dict(),
        tn={str(n): r.to_dict(L) for n, r in sorted(analysis.tn.items())},
        bb={str(n): s.to_dict(L) for n, s in sorted(analysis.scans.items())},
        calculus=derivation.to_json(),
        status=status_table(derivation, levels),
        complete=analysis.complete and not derivation.incomplete,
    )
    return report


def load_report(path) -> AnalysisReport:
    return AnalysisReport.from_dict(json.loads(Path(path).read_text()))
