"""Derive coherence facts for a few group expressions and print one proof.

    python demos/calculus_demo.py
"""

from pathlib import Path

from raagcoh import CoherencePair, INF, derive_facts, parse_expr, verify_derivation

HERE = Path(__file__).parent

EXPRESSIONS = [
    "raag(data/c4.json)",
    "prod(F(2),F(2))",
    "prod(F(2),F(2),F(2))",
    "gog([F(2),F(2)],[Z])",
    "ext(assume(N,{pos(0,3),fin(2)}),F(3))",
    (HERE / "groups.txt").read_text().strip(),
]


def show_tree(node, depth=0):
    print("  " * depth + f"[{node['rule']}] {node['kind']} {node['value']}  ({node['source']})")
    for child in node.get("from", []):
        show_tree(child, depth + 1)


def main():
    for text in EXPRESSIONS:
        r = derive_facts(parse_expr(text, HERE))
        pos = ", ".join(str(p) for p in sorted(r.facts.positive, key=lambda p: p.n)) or "-"
        neg = ", ".join(str(p) for p in sorted(r.facts.negative, key=lambda p: p.n)) or "-"
        print(f"{text}\n  positive: {pos}\n  negative: {neg}\n  replay ok: {bool(verify_derivation(r))}")

    r = derive_facts(parse_expr("prod(Z, raag(data/c4.json))", HERE))
    fid = r.fact_for("positive", CoherencePair(2, INF))
    print("\nwhy prod(Z, raag(C4)) is (2,inf)-coherent:")
    show_tree(r.trace.derivation(fid))


if __name__ == "__main__":
    main()
