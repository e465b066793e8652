"""Walk through the eight-vertex example complex one analysis at a time.

    python demos/example_walkthrough.py
"""

from pathlib import Path

from raagcoh import (betti_rational, certify_tn, is_chordal, load_complex, scan_obstructions,
                     verify_tn_certificate)
from raagcoh.report import analyze
from raagcoh.tn import SearchBudget

HERE = Path(__file__).parent


def main():
    L = load_complex(HERE / "data" / "example.json")
    print(f"{L.n} vertices, dimension {L.dim}, f-vector {L.f_vector()}")

    ch = is_chordal(L.graph)
    print("chordal:", ch.chordal, "| induced cycle:", [L.vertices[v] for v in ch.cycle])

    h = betti_rational(L)
    print("reduced Betti numbers over Q:", list(h.reduced_betti))

    for n in (3, 4):
        res = certify_tn(L, n, SearchBudget(exhaustive_separators=True))
        line = f"T_{n}: {res.status.value}"
        if res.certified:
            line += f" via {res.certificate.root.rule}, verifies: {bool(verify_tn_certificate(res.certificate, L, n))}"
        print(line)

    for n in (1, 2, 3):
        scan = scan_obstructions(L, n)
        first = scan.obstructions[0].subset if scan.obstructions else None
        print(f"scan n={n}: {len(scan.obstructions)} obstructions over {scan.scanned} subsets",
              "| first:", L.labels(first) if first is not None else "-")

    print()
    print(analyze(L).render_text())


if __name__ == "__main__":
    main()
