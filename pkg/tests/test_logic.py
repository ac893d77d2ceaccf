import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import formulas
from oracles import tt_consistent, tt_entails
from pdlarg.logic import (And, Atom, BOTTOM, FormulaSyntaxError, Implies, Not, Or, Signature, TOP,
                          UnknownAtom, consistent, contraries, entails, format_formula,
                          is_contrary, negate, nnf, parse_formula)

a, b, c = Atom("a"), Atom("b"), Atom("c")
a1, a2, a3, a4 = (Atom(f"a{i}") for i in range(1, 5))
SIG = Signature(["a", "b", "c"])


def test_membership_and_tautology():
    assert entails([a], a)
    assert entails([], TOP, Signature([]))


def test_strict_rule_step():
    assert entails([a4, Not(And(a2, a4))], Not(a2))


def test_consistency_examples():
    assert consistent([a, b])
    assert not consistent([a, Not(a)])
    assert consistent([a1, a3, a4, Not(And(a2, a4))])


def test_unknown_atom_rejected():
    with pytest.raises(UnknownAtom):
        SIG.entails([Atom("z")], a)
    with pytest.raises(UnknownAtom):
        SIG.check(Atom("z"))


@given(st.lists(formulas(), max_size=3), formulas())
def test_entails_matches_truth_table(premises, query):
    assert SIG.entails(premises, query) == tt_entails(premises, query, "abc")
    assert SIG.consistent(premises) == tt_consistent(premises, "abc")


def test_entails_matches_truth_table_six_atoms():
    atoms = [f"x{i}" for i in range(6)]
    sig = Signature(atoms)
    xs = [Atom(n) for n in atoms]
    cases = [
        ([And(xs[0], xs[1]), Implies(xs[1], xs[5])], xs[5]),
        ([Or(xs[2], xs[3]), Not(xs[2])], xs[3]),
        ([Or(xs[2], xs[3])], xs[3]),
        ([Implies(xs[0], xs[1]), Implies(xs[1], xs[2]), Implies(xs[2], xs[3]),
          Implies(xs[3], xs[4]), xs[0]], xs[4]),
        ([Not(And(xs[4], xs[5])), xs[4]], Not(xs[5])),
    ]
    for prem, q in cases:
        assert sig.entails(prem, q) == tt_entails(prem, q, atoms)


@given(st.lists(formulas(), max_size=3), formulas())
def test_consistent_iff_not_entails_bottom(premises, extra):
    assert SIG.consistent(premises) == (not SIG.entails(premises, BOTTOM))


@given(st.lists(formulas(), max_size=3), st.lists(formulas(), max_size=2), formulas())
def test_entailment_monotone_and_reflexive(s, more, q):
    if SIG.entails(s, q):
        assert SIG.entails(s + more, q)
    for f in s:
        assert SIG.entails(s, f)


@given(st.lists(formulas(), max_size=4), formulas())
def test_consistently_entails_against_subsets(premises, q):
    import itertools
    expected = any(
        tt_consistent(list(sub), "abc") and tt_entails(list(sub), q, "abc")
        for r in range(len(premises) + 1)
        for sub in itertools.combinations(premises, r))
    assert SIG.consistently_entails(premises, q) == expected


def test_negate_and_contraries():
    assert negate(a) == Not(a)
    assert negate(Not(a)) == Not(Not(a))
    assert is_contrary(Not(a), a) and is_contrary(a, Not(a))
    assert negate(And(a, b)) == Not(And(a, b))
    assert not is_contrary(Or(Not(a), Not(b)), And(a, b))
    assert contraries(Not(a)) == {Not(Not(a)), a}


@given(formulas(), formulas())
def test_is_contrary_symmetric_exactly_on_negation_pairs(f, g):
    assert is_contrary(f, g) == is_contrary(g, f)
    assert is_contrary(f, g) == (f == Not(g) or g == Not(f))


def test_syntactic_equality_no_normalisation():
    assert Not(Not(a)) != a
    assert SIG.entails([Not(Not(a))], a)


@given(formulas())
def test_print_parse_round_trip(f):
    assert parse_formula(format_formula(f)) == f
    assert parse_formula(format_formula(f, neg="~")) == f


@given(formulas())
def test_nnf_equivalent(f):
    g = nnf(f)
    assert SIG.mask(g) == SIG.mask(f)


def test_parser_precedence():
    assert parse_formula("!a & b | c -> a") == Implies(Or(And(Not(a), b), c), a)
    assert parse_formula("a -> b -> c") == Implies(a, Implies(b, c))
    assert parse_formula("true") == TOP and parse_formula("false") == BOTTOM
    assert parse_formula("~(a & b)") == Not(And(a, b))


@pytest.mark.parametrize("text", ["", "a &", "(a", "a b", "&a", "a -> "])
def test_parser_errors(text):
    with pytest.raises(FormulaSyntaxError):
        parse_formula(text)


def test_parser_signature_check():
    with pytest.raises(UnknownAtom):
        parse_formula("a & q", SIG)
