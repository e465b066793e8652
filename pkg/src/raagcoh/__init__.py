"""Coherence analysis for right-angled Artin groups."""

from .calculus import AnalysisBudget, derive_facts, verify_derivation
from .chordal import is_chordal, minimal_separators, t1_certify, verify_t1_certificate
from .coherence import INF, CoherencePair, FactSet, check_consistency
from .complex import Graph, InputError, SimplicialComplex, from_graph, full_subcomplex, load_complex
from .connectivity import bb_finiteness, connectivity_profile
from .expr import parse_expr
from .fundamental_group import pi1_trivial
from .homology import betti_rational, integral_homology
from .obstruction import scan_obstructions
from .report import AnalysisReport, analyze
from .tn import SearchBudget, certify_tn, verify_tn_certificate

__version__ = "0.1.0"

__all__ = [
    "AnalysisBudget", "AnalysisReport", "CoherencePair", "FactSet", "Graph", "INF", "InputError",
    "SearchBudget", "SimplicialComplex", "analyze", "bb_finiteness", "betti_rational", "certify_tn",
    "check_consistency", "connectivity_profile", "derive_facts", "from_graph", "full_subcomplex",
    "integral_homology", "is_chordal", "load_complex", "minimal_separators", "parse_expr", "pi1_trivial",
    "scan_obstructions", "t1_certify", "verify_derivation", "verify_t1_certificate", "verify_tn_certificate",
]
