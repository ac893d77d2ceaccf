"""Worked examples built directly in code.

The same theories ship as ``.pdt`` files under ``fixtures/``; tests parse
those and compare them with the constructions here.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .defaults import NormalDefault, PrioritisedDefaultTheory
from .dung import AbstractFramework
from .logic import And, Atom, Formula, Not, TOP
from .orders import Kind, Preset, SetComparison

__all__ = [
    "FIXTURE_DIR", "fixture_path", "teaching", "example2", "example3", "example4",
    "example5", "two_default", "algorithm_gap", "elitist_gap_preset", "crossed_poset",
    "NamedArgument", "four_cycle_framework", "THEORIES",
]

FIXTURE_DIR = Path(__file__).resolve().parents[2] / "fixtures"


def fixture_path(name: str) -> Path:
    p = FIXTURE_DIR / (name if name.endswith(".pdt") else name + ".pdt")
    if not p.exists():
        raise FileNotFoundError(p)
    return p


def _a(name: str) -> Atom:
    return Atom(name)


def _d(i: str, ante: Formula, cons: Formula) -> NormalDefault:
    return NormalDefault(i, ante, cons)


def teaching(agent: str = "selfish") -> PrioritisedDefaultTheory:
    """A research assistant deciding whether to teach.

    ``bel``: assistants are academics; ``des``: rather not teach;
    ``obl``: academics teach.  A selfish agent ranks obligations lowest, a
    social agent ranks desires lowest; beliefs come first in both.
    """
    Ra, Aa, Ta = _a("Ra"), _a("Aa"), _a("Ta")
    ds = [_d("bel", Ra, Aa), _d("des", Ra, Not(Ta)), _d("obl", Aa, Ta)]
    if agent == "selfish":
        chain = ["obl", "des", "bel"]
    elif agent == "social":
        chain = ["des", "obl", "bel"]
    else:
        raise ValueError(f"unknown agent type {agent!r}")
    return PrioritisedDefaultTheory(ds, [Ra], list(zip(chain, chain[1:])), atoms=["Ra", "Aa", "Ta"])


def example2() -> PrioritisedDefaultTheory:
    a, b, c = _a("a"), _a("b"), _a("c")
    ds = [_d("d1", a, b), _d("d2", b, c), _d("d3", b, Not(c))]
    return PrioritisedDefaultTheory(ds, [a], [("d1", "d2"), ("d2", "d3")], atoms=["a", "b", "c"])


def example3() -> PrioritisedDefaultTheory:
    a1, a2, a3, a4 = (_a(f"a{i}") for i in range(1, 5))
    ds = [_d("d1", TOP, a1), _d("d2", a1, a2), _d("d3", TOP, a3), _d("d4", a3, a4),
          _d("d5", a1, Not(And(a2, a4)))]
    chain = ["d1", "d4", "d3", "d2", "d5"]
    return PrioritisedDefaultTheory(ds, [], list(zip(chain, chain[1:])), atoms=["a1", "a2", "a3", "a4"])


def example4() -> PrioritisedDefaultTheory:
    a, b = _a("a"), _a("b")
    ds = [_d("d1", a, Not(a)), _d("d2", TOP, b)]
    return PrioritisedDefaultTheory(ds, [a], [("d2", "d1")], atoms=["a", "b"])


def example5(chain: tuple[str, ...] = ("d1", "d2", "d3")) -> PrioritisedDefaultTheory:
    """Three unconditioned defaults whose consequents are jointly
    inconsistent; ``a & b`` is added to the universe so the combined
    argument exists."""
    a, b = _a("a"), _a("b")
    ds = [_d("d1", TOP, a), _d("d2", TOP, b), _d("d3", TOP, Not(And(a, b)))]
    return PrioritisedDefaultTheory(ds, [], list(zip(chain, chain[1:])), atoms=["a", "b"],
                                    extra_formulas=[And(a, b)])


def two_default() -> PrioritisedDefaultTheory:
    """Two defaults with the same consequent and no priority between them."""
    a, b, c = _a("a"), _a("b"), _a("c")
    return PrioritisedDefaultTheory([_d("d1", a, c), _d("d2", b, c)], [a, b], [], atoms=["a", "b", "c"])


def algorithm_gap() -> PrioritisedDefaultTheory:
    """A theory on which the single-pass greedy construction accepts a rule
    that is not yet applicable and then has to reject an applied one."""
    p1, p2 = _a("p1"), _a("p2")
    ds = [_d("d1", p2, p1), _d("d2", TOP, And(Not(p2), p1)), _d("d3", p1, Not(p1))]
    return PrioritisedDefaultTheory(ds, [p2], [("d1", "d2"), ("d2", "d3")], atoms=["p1", "p2"])


def sp_blocked_enabler() -> PrioritisedDefaultTheory:
    """A linearised theory on which the structure-preference order built from
    consistent applicability does not reproduce the extension.

    d1 is blocked by the fact, yet its consequent ``q`` lets d2 count as
    applicable, so d3 (whose conclusion clashes with d4) is ranked as though
    ``p`` came from d2.  The resulting framework has a single stable
    extension with inconsistent conclusions.
    """
    p, q, s = _a("p"), _a("q"), _a("s")
    ds = [_d("d1", TOP, q), _d("d2", q, p), _d("d3", p, s), _d("d4", TOP, Not(And(p, s))),
          _d("d5", TOP, p)]
    chain = ["d5", "d4", "d3", "d2", "d1"]
    return PrioritisedDefaultTheory(ds, [Not(q)], list(zip(chain, chain[1:])), atoms=["p", "q", "s"])


THEORIES = {
    "teaching_selfish": lambda: teaching("selfish"),
    "teaching_social": lambda: teaching("social"),
    "ex2": example2,
    "ex3": example3,
    "ex4": example4,
    "ex5": example5,
    "two_default": two_default,
    "algorithm_gap": algorithm_gap,
    "sp_blocked_enabler": sp_blocked_enabler,
}


def elitist_gap_preset() -> Preset:
    """Four elements where a and c are equivalent, a sits below d and d below
    b, c is not below b, while a and b are equivalent.

    These constraints cannot all hold in a transitive relation (c <= a <= d
    <= b forces c <= b), so the relation is kept as given, without closure.
    """
    pairs = [("a", "c"), ("c", "a"), ("a", "d"), ("d", "b"), ("a", "b"), ("b", "a"),
             ("b", "c"), ("b", "d")]
    return Preset(["a", "b", "c", "d"], pairs, validate=False)


def crossed_poset() -> Preset:
    """a0 < a2 and a1 < a3, every other pair incomparable."""
    return Preset(["a0", "a1", "a2", "a3"], [("a0", "a2"), ("a1", "a3")])


@dataclass(frozen=True)
class NamedArgument:
    name: str
    rules: frozenset
    conclusion: str
    subs: tuple = ()


def four_cycle_framework(kind: Kind | str = Kind.ELITIST_STRICT) -> tuple[AbstractFramework, dict[str, NamedArgument]]:
    """Four unconditioned rules ``true => ai`` and four strict rules, each
    deriving the negation of one atom from the other three.

    The rule preorder makes r1 and r2 equivalent, r3 and r4 equivalent, and
    nothing else comparable.  Bi rebuts Ai and every Bj built on Ai.
    Returns the defeat framework under the chosen set comparison.
    """
    names = ["r1", "r2", "r3", "r4"]
    pre = Preset(names, [("r1", "r2"), ("r2", "r1"), ("r3", "r4"), ("r4", "r3")])
    cmp = SetComparison(Kind(kind), pre, check_total=False)
    args: dict[str, NamedArgument] = {}
    for i in range(1, 5):
        args[f"A{i}"] = NamedArgument(f"A{i}", frozenset({f"r{i}"}), f"a{i}")
    for i in range(1, 5):
        others = [j for j in range(1, 5) if j != i]
        args[f"B{i}"] = NamedArgument(f"B{i}", frozenset(f"r{j}" for j in others), f"~a{i}",
                                      tuple(f"A{j}" for j in others))
    conflicts = set()
    for bi in (f"B{i}" for i in range(1, 5)):
        target_atom = args[bi].conclusion[1:]
        ai = f"A{target_atom[1:]}"
        for tname, t in args.items():
            subs = {tname} | set(t.subs)
            if ai in subs and not cmp.strict_less(args[bi].rules, args[ai].rules):
                conflicts.add((bi, tname))
    return AbstractFramework(list(args), conflicts), args
