import dataclasses
import json
import random

import pytest
from hypothesis import given, settings

from conftest import flag_complexes, random_graph
from raagcoh.calculus import AnalysisBudget, Fact, derive_facts, normalise, resaturate, verify_derivation
from raagcoh.chordal import is_chordal
from raagcoh.coherence import INF, CoherencePair
from raagcoh.complex import complex_to_json, cone, cycle, disjoint_union, from_graph, full_subcomplex, simplex
from raagcoh.corpus import example_complex, flag_corpus
from raagcoh.expr import (Assumed, DirectProduct, Extension, Free, FreeAbelian, GraphOfGroups, Raag, Trivial,
                          parse_expr)
from raagcoh.tn import SearchBudget, certify_tn


def P(n, m):
    return CoherencePair(n, m)


def rules_used(res, kind=None):
    return {f.rule for f in res.trace.facts if kind is None or f.kind == kind}


def origin(res, fid):
    """Rule behind a fact, looking through monotonicity steps."""
    f = res.trace.facts[fid]
    while f.rule == "R3":
        f = res.trace.facts[f.premises[0]]
    return f.rule


def test_raag_c4_exact_facts():
    r = derive_facts(Raag(cycle(4)))
    assert r.facts.positive == {P(2, INF)}
    assert r.facts.negative == {P(1, 2)}
    assert r.facts.finiteness == INF


def test_free_squared_matches_c4():
    r = derive_facts(parse_expr("prod(F(2),F(2))"))
    assert r.facts.positive == {P(2, INF)}
    assert r.facts.negative == {P(0, 1), P(1, 2)}
    c4 = derive_facts(Raag(cycle(4))).facts
    for n in range(1, 5):
        assert r.facts.holds(P(n, INF)) == c4.holds(P(n, INF))
        assert r.facts.refuted(P(n, n + 1)) == c4.refuted(P(n, n + 1))


def test_example_group():
    r = derive_facts(Raag(example_complex()))
    assert r.facts.negative == {P(1, 2), P(2, 3)}
    assert r.facts.positive == {P(4, INF)}
    assert not r.facts.holds(P(3, INF)) and not r.facts.refuted(P(3, 4))
    assert r.consistency()
    assert verify_derivation(r)


def test_base_groups():
    for e in (Trivial(), FreeAbelian(3), Free(1)):
        assert derive_facts(e).facts.positive == {P(0, INF)}
    assert derive_facts(Free(3)).facts.positive == {P(1, INF)}
    r = derive_facts(Raag(simplex(3)))  # ℤ⁴
    assert r.facts.positive == {P(0, INF)}


def test_normalise_products():
    assert normalise(DirectProduct((Free(2), FreeAbelian(2), Free(1)))) == Extension(FreeAbelian(3), Free(2))
    assert normalise(DirectProduct((Trivial(), FreeAbelian(0)))) == Trivial()
    assert normalise(DirectProduct((Free(2), Trivial()))) == Free(2)
    assert normalise(DirectProduct((Free(1), Free(1)))) == FreeAbelian(2)


def test_chordal_times_z_uses_droms_then_extension():
    rng = random.Random(9)
    seen = 0
    while seen < 10:
        L = from_graph(random_graph(rng, rng.randint(2, 7), 0.6))
        if not is_chordal(L.graph).chordal or L.is_simplex_on(L.mask):
            continue
        seen += 1
        r = derive_facts(DirectProduct((Raag(L), FreeAbelian(1))))
        assert r.facts.holds(P(1, INF))
        fid = r.fact_for("positive", P(1, INF))
        fact = r.trace.facts[fid]
        assert fact.rule == "R7"
        assert origin(r, fact.premises[0]) == "R4"   # quotient A_L
        assert origin(r, fact.premises[1]) == "R1"   # kernel ℤ
        assert verify_derivation(r)
        assert certify_tn(L, 2).certified


def test_graph_of_groups_rules():
    r = derive_facts(parse_expr("gog([F(2),F(2)],[Z])"))
    assert r.facts.positive == {P(1, INF)}
    assert {"R5", "R6"} <= rules_used(r)
    assert verify_derivation(r)
    # an edge group that is only (0,2)-coherent caps m at 3
    r = derive_facts(parse_expr("gog([F(2)],[assume(E,{pos(0,2),fin(inf)})])"))
    assert r.facts.holds(P(1, 3)) and not r.facts.holds(P(1, 4))


def test_extension_both_directions():
    r = derive_facts(parse_expr("ext(assume(N,{pos(0,3),fin(2)}),F(3))"))
    assert r.facts.positive == {P(1, 3)}
    assert r.facts.finiteness == 2
    quotient = r.node_facts["0.1"]
    assert quotient.holds(P(1, INF))
    # with nothing known about the quotient nothing is derived, and F_0 is all G inherits
    r = derive_facts(Extension(Assumed("N", (), (), 2), Assumed("Q", (), (), 0)))
    assert not r.node_facts["0.1"].positive
    assert r.node_facts["0"].finiteness == 0


def test_amalgam_over_raag(tmp_path):
    for name, L in (("c5", cycle(5)), ("edge", full_subcomplex(cycle(5), ["c0", "c1"]))):
        (tmp_path / f"{name}.json").write_text(json.dumps(complex_to_json(L)))
    r = derive_facts(parse_expr("amalgam(raag(c5.json),raag(c5.json),over=edge.json)", tmp_path))
    # vertex groups (2,∞), edge group ℤ² is (1,∞): the amalgam is (2,∞)
    assert r.facts.holds(P(2, INF))
    assert verify_derivation(r)


def test_contradictory_assumptions_reported():
    r = derive_facts(Assumed("G", (P(1, INF),), (P(2, 3),)))
    c = r.consistency()
    assert not c
    assert c.traces[0]["rule"] == "ASSUMED"


def test_fixpoint_and_replay_on_expressions():
    exprs = ["prod(F(2),F(2),F(2))", "prod(Z,F(2))", "ext(Z^2,F(2))", "gog([F(2),Z],[Z])",
             "ext(assume(N,{pos(0,3),fin(2)}),F(3))", "prod(F(2),assume(H,{pos(2,inf),neg(1,2),fin(inf)}))"]
    for text in exprs:
        r = derive_facts(parse_expr(text))
        assert verify_derivation(r), text
        assert resaturate(r) == 0
        assert r.consistency()


def test_replay_rejects_tampering():
    r = derive_facts(Raag(example_complex()))
    facts = r.trace.facts
    for i, f in enumerate(facts):
        if f.rule in ("R8", "R11", "R4", "R2"):
            forged = P(f.value.n - 1, f.value.m) if f.kind == "positive" else P(f.value.n + 1, f.value.n + 2)
            facts[i] = dataclasses.replace(f, value=forged)
            assert not verify_derivation(r), f.rule
            facts[i] = f
    assert verify_derivation(r)
    facts.append(Fact(len(facts), "0", "negative", P(3, 4), "R11", (), {"obstruction": {"subset": [], "n": 3}}))
    assert not verify_derivation(r)


def test_premise_order_enforced():
    r = derive_facts(parse_expr("prod(Z,F(2))"))
    f = next(f for f in r.trace.facts if f.premises)
    r.trace.facts[f.id] = dataclasses.replace(f, premises=(f.id,))
    assert not verify_derivation(r)


def test_budget_marks_incomplete():
    # the root split is allowed but the double cone below it sits at the depth limit
    L = disjoint_union(cone(cone(cycle(5, "p"), "pa"), "pb"), simplex(["x"]))
    r = derive_facts(Raag(L), AnalysisBudget(tn=SearchBudget(max_depth=1)))
    assert r.incomplete


def test_corpus_soundness():
    for name, L in flag_corpus().items():
        r = derive_facts(Raag(L))
        assert r.consistency(), name
        assert verify_derivation(r), name
        assert resaturate(r) == 0
        # R10 and R2 never disagree: certified levels are implied by or imply the dimension bound
        for n in range(2, L.dim + 3):
            if certify_tn(L, n).certified:
                assert r.facts.holds(P(n, INF)), name


def test_negatives_only_from_allowed_rules():
    for L in flag_corpus().values():
        r = derive_facts(Raag(L))
        assert rules_used(r, "negative") <= {"R4", "R9", "R11"}


@settings(max_examples=25, deadline=None)
@given(flag_complexes(max_vertices=6))
def test_random_complexes_sound(L):
    r = derive_facts(Raag(L))
    assert r.consistency()
    assert verify_derivation(r)
    assert resaturate(r) == 0


def test_json_uses_inf_strings():
    r = derive_facts(Raag(cycle(4)))
    text = json.dumps(r.to_json())
    assert "Infinity" not in text
    assert r.to_json()["positive"] == [[2, "inf"]]


def test_graph_of_groups_requires_vertex():
    with pytest.raises(Exception):
        GraphOfGroups((), ())
