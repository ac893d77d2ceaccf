import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_extension, dung_all, lifted, tt_consistent, tt_entails
from pdlarg import corpus
from pdlarg.argumentation import instantiate
from pdlarg.dung import (AbstractFramework, FrameworkTooLarge, attack_conflict_free,
                         compute_semantics, defeat_graph, generate_stable_extension, grounded,
                         is_conflict_free, is_stable, sceptical_conclusions, stable_extensions,
                         verify_representation)
from pdlarg.fuzz import FuzzConfig, random_theory
from pdlarg.logic import Atom, Not
from pdlarg.orders import Kind, check_reasonableness


@st.composite
def frameworks(draw, max_nodes=7):
    n = draw(st.integers(0, max_nodes))
    nodes = [f"n{i}" for i in range(n)]
    pairs = list(itertools.product(nodes, repeat=2))
    conflicts = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs))) if pairs else set()
    return AbstractFramework(nodes, conflicts)


def as_sets(exts):
    return {frozenset(e) for e in exts}


# --- abstract semantics ----------------------------------------------------------

def test_empty_framework():
    af = AbstractFramework([], set())
    assert grounded(af) == frozenset()
    assert as_sets(compute_semantics(af, "stable")) == {frozenset()}


def test_mutual_conflict():
    # frozen from enumerating all labellings of two nodes
    af = AbstractFramework(["A", "B"], {("A", "B"), ("B", "A")})
    assert as_sets(compute_semantics(af, "preferred")) == {frozenset("A"), frozenset("B")}
    assert compute_semantics(af, "grounded").extensions == [frozenset()]
    assert as_sets(compute_semantics(af, "complete")) == {frozenset(), frozenset("A"), frozenset("B")}


def test_odd_cycle_has_no_stable_extension():
    af = AbstractFramework("abc", {("a", "b"), ("b", "c"), ("c", "a")})
    assert stable_extensions(af) == []
    assert as_sets(compute_semantics(af, "preferred")) == {frozenset()}


def test_framework_validation_and_limits():
    with pytest.raises(ValueError):
        AbstractFramework(["a"], {("a", "b")})
    with pytest.raises(ValueError):
        compute_semantics(AbstractFramework([], set()), "semi-stable")
    af = AbstractFramework(range(70), set())
    with pytest.raises(FrameworkTooLarge):
        compute_semantics(af, "complete")
    assert compute_semantics(af, "stable").extensions == [frozenset(range(70))]


@settings(max_examples=200)
@given(frameworks())
def test_semantics_match_enumeration(af):
    want = dung_all(af.nodes, af.conflicts)
    for sem in ("complete", "preferred", "grounded", "stable"):
        assert as_sets(compute_semantics(af, sem)) == want[sem], sem


@settings(max_examples=200)
@given(frameworks(max_nodes=9))
def test_semantics_inclusions(af):
    g = grounded(af)
    comp = as_sets(compute_semantics(af, "complete"))
    pref = as_sets(compute_semantics(af, "preferred"))
    stab = as_sets(compute_semantics(af, "stable"))
    assert all(g <= c for c in comp)
    assert stab <= pref <= comp
    assert all(is_stable(af, s) for s in stab)


def test_four_cycle_stable_sets():
    af, _ = corpus.four_cycle_framework()
    got = as_sets(stable_extensions(af))
    assert got == {frozenset({"A1", "A2", "A3", "B4"}), frozenset({"A1", "A2", "A4", "B3"}),
                   frozenset({"A1", "A3", "A4", "B2"}), frozenset({"A2", "A3", "A4", "B1"})}


# --- instantiated frameworks -------------------------------------------------------

def test_example2_defeats_under_disjoint_elitist():
    inst = instantiate(corpus.example2())
    a = inst.argument("[[[a] => b] => c]")
    b = inst.argument("[[[a] => b] => ~c]")
    d = defeat_graph(inst, Kind.DISJOINT_ELITIST).defeats
    assert (b, a) in d and (a, b) not in d


def test_example2_sceptical_by_order():
    inst = instantiate(corpus.example2())
    c = Atom("c")
    exts = compute_semantics(defeat_graph(inst, Kind.ELITIST_ORIGINAL).framework, "stable")
    assert len(exts) == 2
    concs = sceptical_conclusions(exts)
    assert c not in concs and Not(c) not in concs
    exts = compute_semantics(defeat_graph(inst, Kind.STRUCTURE_PREFERENCE).framework, "stable")
    assert len(exts) == 1 and Not(c) in sceptical_conclusions(exts)


def test_example3_stable_extension():
    inst = instantiate(corpus.example3())
    args, _ = generate_stable_extension(inst)
    got = {a.label for a in args}
    assert {"[[[true => a1] => ~(a2 & a4)], [[true => a3] => a4] -> ~a2]", "[[true => a3] => a4]",
            "[[true => a1] => ~(a2 & a4)]", "[true => a3]", "[true => a1]"} <= got
    assert "[[true => a1] => a2]" not in got
    assert frozenset(args) in as_sets(compute_semantics(defeat_graph(inst).framework, "stable"))


def test_example4_strict_attacker_defeats():
    inst = instantiate(corpus.example4())
    a0 = inst.argument("[a]")
    a1 = inst.argument("[[a] => ~a]")
    assert (a0, a1) in defeat_graph(inst).defeats
    args, _ = generate_stable_extension(inst)
    assert {a.label for a in args} == {"[a]", "[-> true]", "[[a] -> ~~a]", "[true => b]"}


def test_empty_defaults_gives_strict_arguments():
    from pdlarg.defaults import PrioritisedDefaultTheory
    inst = instantiate(PrioritisedDefaultTheory([], [Atom("a")], atoms=["a"]))
    args, mask = generate_stable_extension(inst)
    assert mask == 0 and set(args) == set(inst.args(()))


def test_sceptical_needs_extensions():
    with pytest.raises(ValueError):
        sceptical_conclusions([])


def test_unknown_variant():
    with pytest.raises(ValueError):
        generate_stable_extension(instantiate(corpus.example4()), "other")


def test_algorithm_gap():
    th = corpus.algorithm_gap()
    inst = instantiate(th)
    assert inst.order.sp_names() == ("r1", "r3", "r2")
    lit, lit_mask = generate_stable_extension(inst, "literal")
    app, app_mask = generate_stable_extension(inst, "applicable")
    assert {r.name for r in inst.rules_of_mask(lit_mask)} == {"r3"}
    assert set(lit) == set(inst.args(()))
    af = defeat_graph(inst).framework
    assert not is_stable(af, frozenset(lit))
    assert {r.name for r in inst.rules_of_mask(app_mask)} == {"r1"}
    assert as_sets(stable_extensions(af)) == {frozenset(app)}
    rep = verify_representation(th)
    assert rep.ok and rep.algorithm_applicable and not rep.algorithm_literal


@settings(max_examples=150)
@given(st.integers(0, 10**6))
def test_attack_cf_implies_defeat_cf(seed):
    th, lin = random_theory(random.Random(seed), FuzzConfig(atoms=3, defaults=4))
    inst = instantiate(th, lin)
    graph = defeat_graph(inst)
    af, atk = graph.framework, graph.attack_framework
    pool = list(inst.pool)
    rng = random.Random(seed)
    for _ in range(30):
        members = {a for a in pool if rng.random() < 0.5}
        if is_conflict_free(atk, members):
            assert is_conflict_free(af, members)
    for mask in range(1 << len(inst.rules)):
        args = inst.args(mask)
        assert attack_conflict_free(args) == is_conflict_free(atk, args)


@settings(max_examples=150)
@given(st.integers(0, 10**6))
def test_defeats_propagate_to_superarguments(seed):
    th, lin = random_theory(random.Random(seed), FuzzConfig(atoms=3, defaults=4))
    inst = instantiate(th, lin)
    graph = defeat_graph(inst)
    for a, b in graph.defeats:
        for c in inst.pool:
            if b in c.subarguments:
                assert (a, c) in graph.defeats


@settings(max_examples=100)
@given(st.integers(0, 10**6), st.sampled_from(list(Kind)))
def test_defeats_match_attack_triples(seed, kind):
    th, lin = random_theory(random.Random(seed), FuzzConfig(atoms=3, defaults=4))
    inst = instantiate(th, lin)
    graph = defeat_graph(inst, kind)
    if kind is Kind.STRUCTURE_PREFERENCE:
        lifting, le = "disjoint_elitist", inst.sp_preset.le
    else:
        lifting, le = kind.value, inst.base_preset.le
    names = inst.dr_names
    want = {(t.attacker, t.target) for t in inst.attacks(inst.pool)
            if not lifted(lifting, le, frozenset(names(t.attacker)), frozenset(names(t.target_sub)))}
    assert graph.defeats == want


# --- a theory where the consistent-applicability ranking breaks the match -------

def test_sp_blocked_enabler_counterexample():
    th = corpus.sp_blocked_enabler()
    lin = None
    inst = instantiate(th)
    atoms = ["p", "q", "s"]
    applied, support = brute_extension(th.defaults, th.facts, ["d5", "d4", "d3", "d2", "d1"], atoms)
    assert applied == ["d4", "d5"]
    assert tt_entails(support, Not(Atom("s")), atoms)

    assert list(inst.order.sp_names()) == ["r5", "r4", "r3", "r2", "r1"]
    by_label = {a.label: a for a in inst.pool}
    against_s = by_label["[[true => p], [true => ~(p & s)] -> ~s]"]
    for_s = by_label["[[true => p] => s]"]
    assert sorted(inst.dr_names(against_s)) == ["r4", "r5"]
    assert sorted(inst.dr_names(for_s)) == ["r3", "r5"]
    le = inst.sp_preset.le
    assert lifted("disjoint_elitist", le, frozenset({"r4", "r5"}), frozenset({"r3", "r5"}))
    graph = defeat_graph(inst)
    assert any(t.attacker == against_s and t.target == for_s for t in graph.attacks)
    assert (against_s, for_s) not in graph.defeats

    [ext] = stable_extensions(graph.framework)
    concs = {a.conclusion for a in ext}
    assert Atom("s") in concs and Not(Atom("p")) in concs
    assert not tt_consistent(list(concs), atoms)
    rep = verify_representation(th, lin)
    assert not rep.direction1 and not rep.direction2 and rep.stable_count == 1


def test_sp_blocked_enabler_active_reading_verifies():
    th = corpus.sp_blocked_enabler()
    inst = instantiate(th, None, sp_applicability="active")
    assert list(inst.order.sp_names()) == ["r3", "r2", "r1", "r5", "r4"]
    assert verify_representation(th, inst=inst).ok


@pytest.mark.parametrize("reading", ["consistent", "active"])
def test_sp_blocked_enabler_violates_r4(reading):
    th = corpus.sp_blocked_enabler()
    inst = instantiate(th, None, sp_applicability=reading)
    rep = check_reasonableness(lambda a, b: inst.strictly_less(Kind.STRUCTURE_PREFERENCE, a, b),
                               list(inst.pool), inst.strict_extensions, max_size=3)
    assert rep.r1 and rep.r2 and rep.r3 and rep.r4_counterexample_found
