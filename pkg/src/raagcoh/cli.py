"""Command-line entry point: ``raagcoh <subcommand> ...``.

Exit codes: 0 success, 1 input error, 2 a budget truncated the result.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from .calculus import AnalysisBudget, derive_facts
from .chordal import chordality, t1_certify
from .complex import InputError, load_complex
from .expr import parse_expr
from .fundamental_group import DEFAULT_PI1_BUDGET
from .homology import betti_rational, integral_homology
from .obstruction import DEFAULT_SUBSET_CAP, scan_obstructions
from .report import EXIT_INPUT, EXIT_OK, EXIT_TRUNCATED, analyze, canonical_json
from .tn import SearchBudget, TnStatus, certify_tn


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _global_flags(defaults: bool) -> argparse.ArgumentParser:
    # Shared by the top-level parser and every subparser so the flags may
    # appear on either side of the subcommand name.
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", metavar="PATH", default=d(None),
                   help="also write the machine-readable result to PATH ('-' for stdout)")
    p.add_argument("--max-n", type=_positive_int, default=d(None), help="highest level n to analyse")
    p.add_argument("--threads", type=_positive_int, default=d(1), help="worker threads")
    p.add_argument("--seed", type=int, default=d(None), help="seed for randomised checks")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="raagcoh", parents=[_global_flags(True)],
                                     description="Coherence analysis of right-angled Artin groups.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = [_global_flags(False)]

    p = sub.add_parser("analyze", parents=common, help="full pipeline and status table")
    p.add_argument("input")
    p.add_argument("--max-subsets", type=_positive_int, default=DEFAULT_SUBSET_CAP)
    p.add_argument("--pi1-budget", type=_positive_int, default=DEFAULT_PI1_BUDGET)

    p = sub.add_parser("chordal", parents=common, help="chordality of the 1-skeleton")
    p.add_argument("input")

    p = sub.add_parser("t1", parents=common, help="clique-separator certificate for T_1")
    p.add_argument("input")

    p = sub.add_parser("homology", parents=common, help="simplicial homology")
    p.add_argument("input")
    p.add_argument("--coeff", choices=("q", "z"), default="z")

    p = sub.add_parser("tn", parents=common, help="search for a T_n certificate")
    p.add_argument("input")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--exhaustive-separators", action="store_true")
    p.add_argument("--max-depth", type=_positive_int, default=SearchBudget.max_depth)
    p.add_argument("--max-separators", type=_positive_int, default=SearchBudget.max_separators)

    p = sub.add_parser("bb", parents=common, help="scan for Bestvina-Brady obstructions")
    p.add_argument("input")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--max-subsets", type=_positive_int, default=DEFAULT_SUBSET_CAP)
    p.add_argument("--pi1-budget", type=_positive_int, default=DEFAULT_PI1_BUDGET)

    p = sub.add_parser("calculus", parents=common, help="derive coherence facts for a group expression")
    p.add_argument("input", metavar="expr-file")
    return parser


def _emit(args, data: dict, text: str) -> None:
    if args.json == "-":
        sys.stdout.write(canonical_json(data))
        return
    sys.stdout.write(text)
    if args.json:
        Path(args.json).write_text(canonical_json(data), newline="\n")


def _cmd_analyze(args) -> int:
    budget = AnalysisBudget(args.max_n, SearchBudget(), args.max_subsets, args.pi1_budget, workers=args.threads)
    report = analyze(args.input, budget=budget)
    _emit(args, report.to_dict(), report.render_text())
    return report.exit_code


def _cmd_chordal(args) -> int:
    L = load_complex(args.input)
    r = chordality(L.graph.adj, L.mask)
    if r.chordal:
        data = {"chordal": True, "order": [L.vertices[i] for i in r.order]}
        text = "chordal\nperfect elimination order: " + " ".join(data["order"]) + "\n"
    else:
        data = {"chordal": False, "cycle": [L.vertices[i] for i in r.cycle]}
        text = "not chordal\ninduced cycle: " + " ".join(data["cycle"]) + "\n"
    _emit(args, data, text)
    return EXIT_OK


def _cmd_t1(args) -> int:
    L = load_complex(args.input)
    L.require_flag()
    r = t1_certify(L)
    if r.certified:
        data = {"certified": True, "certificate": r.certificate.to_dict(L)}
        text = f"in T_1: {len(r.certificate.leaves())} simplex pieces\n"
    else:
        data = {"certified": False, "cycle": [L.vertices[i] for i in r.cycle]}
        text = "not in T_1; induced cycle: " + " ".join(data["cycle"]) + "\n"
    _emit(args, data, text)
    return EXIT_OK


def _cmd_homology(args) -> int:
    L = load_complex(args.input)
    h = integral_homology(L) if args.coeff == "z" else betti_rational(L)
    text = f"coefficients {h.coefficients}\nbetti {list(h.betti)}\nreduced betti {list(h.reduced_betti)}\n"
    if h.torsion is not None:
        text += f"torsion {[list(t) for t in h.torsion]}\n"
    _emit(args, h.to_dict(), text)
    return EXIT_OK


def _cmd_tn(args) -> int:
    L = load_complex(args.input)
    budget = SearchBudget(args.max_depth, args.max_separators, args.exhaustive_separators)
    r = certify_tn(L, args.n, budget)
    _emit(args, r.to_dict(L), f"T_{args.n}: {r.status.value} ({r.nodes_explored} nodes explored)\n")
    return EXIT_TRUNCATED if r.status is TnStatus.BUDGET_EXCEEDED else EXIT_OK


def _cmd_bb(args) -> int:
    L = load_complex(args.input)
    s = scan_obstructions(L, args.n, args.max_subsets, args.pi1_budget, workers=args.threads)
    data = s.to_dict(L)
    lines = [f"n={args.n}: {data['verdict']} ({s.scanned} of {s.total_subsets} subsets)"]
    lines += ["obstruction: {" + ", ".join(o["subset"]) + "}" for o in data["obstructions"]]
    _emit(args, data, "\n".join(lines) + "\n")
    return EXIT_OK if s.exhaustive or s.found else EXIT_TRUNCATED


def _cmd_calculus(args) -> int:
    path = Path(args.input)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    try:
        expr = parse_expr(text, path.parent)
    except InputError as exc:
        raise InputError(f"{path}:{exc}") from None
    r = derive_facts(expr, AnalysisBudget(args.max_n, workers=args.threads))
    data = r.to_json()
    fs = r.facts
    lines = [f"group {expr}",
             "positive " + " ".join(map(str, sorted(fs.positive))),
             "negative " + " ".join(map(str, sorted(fs.negative))),
             f"finiteness F_{data['finiteness']}"]
    _emit(args, data, "\n".join(lines) + "\n")
    return EXIT_TRUNCATED if r.incomplete else EXIT_OK


COMMANDS = {
    "analyze": _cmd_analyze, "chordal": _cmd_chordal, "t1": _cmd_t1, "homology": _cmd_homology,
    "tn": _cmd_tn, "bb": _cmd_bb, "calculus": _cmd_calculus,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed is not None:
        random.seed(args.seed)
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
