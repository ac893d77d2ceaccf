import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_conclusions, tt_consistent, tt_entails
from pdlarg import corpus
from pdlarg.argumentation import (AXIOM, DEFEASIBLE, STRICT, instantiate, rule_name,
                                  structure_preference_order)
from pdlarg.defaults import NormalDefault, PrioritisedDefaultTheory
from pdlarg.fuzz import FuzzConfig, random_theory
from pdlarg.logic import Atom, Not, TOP, Top, is_contrary
from pdlarg.orders import Kind, Outcome

SMALL = FuzzConfig(atoms=3, defaults=4, max_facts=2)


def small_instance(seed):
    th, lin = random_theory(random.Random(seed), SMALL)
    return instantiate(th, lin)


def labels(args):
    return {a.label for a in args}


# --- rules and orders ---------------------------------------------------------

def test_rule_names():
    assert rule_name("d12") == "r12"
    assert rule_name("des") == "r_des"


def test_example2_rules_and_base_order():
    inst = instantiate(corpus.example2())
    assert inst.order.base_names() == ("r1", "r2", "r3")
    for d in inst.theory.defaults:
        assert inst.f_inverse(inst.f(d)) == d


def test_example3_sp_order():
    inst = instantiate(corpus.example3())
    assert inst.order.base_names() == ("r1", "r4", "r3", "r2", "r5")
    assert inst.order.sp_names() == ("r2", "r5", "r1", "r4", "r3")


def test_example4_orders():
    inst = instantiate(corpus.example4())
    assert inst.order.base_names() == ("r2", "r1")
    assert inst.order.sp_names() == ("r2", "r1")


def test_empty_rules():
    th = PrioritisedDefaultTheory([], [Atom("a")], atoms=["a"])
    inst = instantiate(th)
    assert inst.rules == () and inst.order.sp == ()
    assert labels(inst.pool) == {"[a]", "[-> true]"}
    assert inst.attacks() == []


def test_single_rule_sp():
    th = PrioritisedDefaultTheory([NormalDefault("d1", Atom("q"), Atom("a"))], [], atoms=["a", "q"])
    assert instantiate(th).order.sp_names() == ("r1",)


def test_sp_stall_picks_base_greatest():
    # neither antecedent is ever derivable, so the base order is kept
    a, b, p = Atom("a"), Atom("b"), Atom("p")
    th = PrioritisedDefaultTheory([NormalDefault("d1", p, a), NormalDefault("d2", Not(p), b)], [],
                                  [("d1", "d2")], atoms=["a", "b", "p"])
    assert instantiate(th).order.sp_names() == ("r1", "r2")


def test_sp_applicability_readings_differ_under_inconsistency():
    # after r3 fires the known formulas {~p1, p1} are inconsistent; read
    # classically they entail the antecedent ~p2 of r2 as well
    p1, p2 = Atom("p1"), Atom("p2")
    ds = [NormalDefault("d1", TOP, Not(p2)), NormalDefault("d2", Not(p2), Not(p1)),
          NormalDefault("d3", TOP, p1)]
    th = PrioritisedDefaultTheory(ds, [Not(p1)], [("d1", "d3"), ("d3", "d2")], atoms=["p1", "p2"])
    inst = instantiate(th)
    base = inst.order.base
    consistent = structure_preference_order(inst.rules, base, th.facts, th.signature, "consistent")
    classical = structure_preference_order(inst.rules, base, th.facts, th.signature, "classical")
    assert [r.name for r in consistent] == ["r2", "r1", "r3"]
    assert [r.name for r in classical] == ["r1", "r2", "r3"]
    assert instantiate(th, sp_applicability="classical").order.sp_names() == ("r1", "r2", "r3")
    with pytest.raises(ValueError):
        structure_preference_order(inst.rules, base, [], th.signature, "other")


@settings(max_examples=150)
@given(st.integers(0, 10**6))
def test_sp_selection_respects_applicability(seed):
    inst = small_instance(seed)
    sig = inst.signature
    base_rank = {r.name: i for i, r in enumerate(inst.order.base)}
    chosen = list(reversed(inst.order.sp))
    assert sorted(r.name for r in chosen) == sorted(r.name for r in inst.rules)
    for i, pick in enumerate(chosen):
        known = set(inst.axioms)
        prefix = chosen[:i]
        grew = True
        while grew:
            grew = False
            for r in prefix:
                if r.consequent not in known and sig.consistently_entails(known, r.antecedent):
                    known.add(r.consequent)
                    grew = True
        rest = chosen[i:]
        live = [r for r in rest if sig.consistently_entails(known, r.antecedent)]
        if live:
            assert pick == max(live, key=lambda r: base_rank[r.name])
        else:
            assert pick == max(rest, key=lambda r: base_rank[r.name])


# --- the argument pool ----------------------------------------------------------

def test_example3_argument_b():
    inst = instantiate(corpus.example3())
    b = inst.argument("[[true => a3] => a4]")
    assert inst.dr_names(b) == {"r3", "r4"}
    assert b in inst.args({"r3", "r4"})


def test_args_empty_is_strict_only():
    inst = instantiate(corpus.example4())
    assert labels(inst.args(())) == {"[a]", "[-> true]", "[[a] -> ~~a]"}
    assert all(a.is_strict for a in inst.args(()))


@settings(max_examples=120)
@given(st.integers(0, 10**6))
def test_pool_structure(seed):
    inst = small_instance(seed)
    atoms = inst.signature.atoms
    pool = inst.pool
    members = set(pool)
    for a in pool:
        assert a.subarguments <= members
        assert a.premises <= set(inst.axioms)
        assert a.is_firm
        assert a.is_strict == (a.rule_mask == 0)
        assert a.conclusion in inst.universe
        if a.kind == AXIOM:
            assert a.conclusion in inst.axioms
        elif a.kind == DEFEASIBLE:
            assert a.conclusion == a.rule.consequent
            if a.subs:
                assert a.subs[0].conclusion == a.rule.antecedent or isinstance(a.rule.antecedent, Top)
                assert not (a.subs[0].rule_mask >> a.rule_index) & 1
            else:
                assert not inst.strict_rules
        else:
            prem = [s.conclusion for s in a.subs]
            assert all(s.kind != STRICT for s in a.subs)
            assert tt_consistent(prem, atoms)
            assert tt_entails(prem, a.conclusion, atoms)
            for i in range(len(prem)):
                assert not tt_entails(prem[:i] + prem[i + 1:], a.conclusion, atoms)


@settings(max_examples=60)
@given(st.integers(0, 10**6))
def test_conclusions_match_oracle(seed):
    inst = small_instance(seed)
    atoms = inst.signature.atoms
    rules = inst.rules
    for mask in range(1 << len(rules)):
        subset = [r for i, r in enumerate(rules) if (mask >> i) & 1]
        got = {a.conclusion for a in inst.args(subset)}
        want = brute_conclusions([(r.antecedent, r.consequent) for r in subset], inst.axioms,
                                 list(inst.universe), atoms)
        assert got == want


@settings(max_examples=100)
@given(st.integers(0, 10**6))
def test_args_monotone_and_sub_closed(seed):
    inst = small_instance(seed)
    n = len(inst.rules)
    prev = {}
    for mask in range(1 << n):
        args = set(inst.args(mask))
        assert all(a.subarguments <= args for a in args)
        assert all(a.rule_mask & ~mask == 0 for a in args)
        for i in range(n):
            if (mask >> i) & 1:
                assert prev[mask & ~(1 << i)] <= args
        prev[mask] = args


# --- attacks and preferences ----------------------------------------------------

def test_example3_d_attacks_a():
    inst = instantiate(corpus.example3())
    a = inst.argument("[[true => a1] => a2]")
    d = inst.argument("[[[true => a1] => ~(a2 & a4)], [[true => a3] => a4] -> ~a2]")
    assert any(t.attacker == d and t.target == a and t.target_sub == a for t in inst.attacks())
    assert inst.preference(Kind.STRUCTURE_PREFERENCE, d, a) is not Outcome.STRICTLY_LESS


def test_example2_mutual_rebuttal_and_preferences():
    inst = instantiate(corpus.example2())
    a = inst.argument("[[[a] => b] => c]")
    b = inst.argument("[[[a] => b] => ~c]")
    pairs = {(t.attacker, t.target) for t in inst.attacks()}
    assert (a, b) in pairs and (b, a) in pairs
    assert inst.preference(Kind.ELITIST_ORIGINAL, a, b) is Outcome.INCOMPARABLE
    assert inst.preference(Kind.DISJOINT_ELITIST, a, b) is Outcome.STRICTLY_LESS


def test_strict_pool_has_no_attacks():
    th = PrioritisedDefaultTheory([], [Atom("a"), Not(Atom("b"))], atoms=["a", "b"])
    assert instantiate(th).attacks() == []


def test_attacks_need_closed_pool():
    inst = instantiate(corpus.example3())
    top = [a for a in inst.pool if a.size > 2]
    with pytest.raises(ValueError):
        inst.attacks(top)


@settings(max_examples=120)
@given(st.integers(0, 10**6))
def test_attack_definition_and_propagation(seed):
    inst = small_instance(seed)
    reported = {(t.attacker, t.target, t.target_sub) for t in inst.attacks()}
    expected = {(a, b, s) for a in inst.pool for b in inst.pool for s in b.subarguments
                if s.kind == DEFEASIBLE and is_contrary(a.conclusion, s.rule.consequent)}
    assert reported == expected
    for a, b, s in reported:
        for c in inst.pool:
            if b in c.subarguments:
                assert (a, c, s) in reported


# --- strict extensions ------------------------------------------------------------

def test_strict_extensions_without_strict_rules():
    th = corpus.example5()
    inst = instantiate(th, ("d1", "d2", "d3"), strict_rules=False)
    a = inst.argument("[true => a]")
    b = inst.argument("[true => b]")
    assert inst.strict_extensions([]) == []
    assert inst.strict_extensions([a]) == [a]
    assert inst.strict_extensions([a, b]) == []


def test_strict_extensions_with_strict_rules():
    inst = instantiate(corpus.example5(), ("d1", "d2", "d3"))
    a = inst.find(Atom("a"), ["r1"])[0]
    b = inst.find(Atom("b"), ["r2"])[0]
    ext = inst.strict_extensions([a, b])
    assert ext and all(inst.dr_names(x) == {"r1", "r2"} for x in ext)
    assert any(x.subarguments >= {a, b} for x in ext)
