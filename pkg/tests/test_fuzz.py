import random

from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import tt_consistent
from pdlarg.fuzz import FuzzConfig, fuzz_corpus, random_theory
from pdlarg.logic import TOP
from pdlarg.pdt_format import print_theory


def test_same_seed_same_corpus():
    a = [(print_theory(t), lin.order) for t, lin in fuzz_corpus(11, 40)]
    b = [(print_theory(t), lin.order) for t, lin in fuzz_corpus(11, 40)]
    assert a == b
    c = [(print_theory(t), lin.order) for t, lin in fuzz_corpus(12, 40)]
    assert a != c


@settings(max_examples=300)
@given(st.integers(0, 10**6), st.integers(1, 4), st.integers(1, 6))
def test_generator_constraints(seed, atoms, defaults):
    cfg = FuzzConfig(atoms=atoms, defaults=defaults)
    th, lin = random_theory(random.Random(seed), cfg)
    assert len(th.signature.atoms) == atoms
    assert 1 <= len(th.defaults) <= defaults
    assert len(th.facts) <= cfg.max_facts
    assert tt_consistent(th.facts, th.signature.atoms)
    lin.validate(th)
    earlier = set()
    for d in th.defaults:
        assert d.antecedent == TOP or d.antecedent in th.facts or d.antecedent in earlier
        earlier.add(d.consequent)
