"""Seeded random linearised theories for property checks.

Facts are a consistent set of literals.  Each default's antecedent is
``true``, a fact literal, or the consequent of an earlier default, so chains
of defaults form; consequents are literals or small conjunctions,
disjunctions and negated conjunctions.  Priorities are a random total order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator

from .argumentation import PoolTooLarge
from .defaults import Linearisation, NormalDefault, PrioritisedDefaultTheory
from .dung import FrameworkTooLarge, verify_representation
from .logic import And, Atom, Formula, Not, Or, TOP

__all__ = ["FuzzConfig", "FuzzTally", "random_theory", "fuzz_corpus", "check_corpus"]


@dataclass(frozen=True)
class FuzzConfig:
    atoms: int = 4
    defaults: int = 6
    max_facts: int = 2
    compound_rate: float = 0.3
    fact_antecedent_rate: float = 0.25
    top_antecedent_rate: float = 0.35


def _literal(rng: random.Random, names: list[str]) -> Formula:
    a = Atom(rng.choice(names))
    return Not(a) if rng.random() < 0.5 else a


def _consequent(rng: random.Random, names: list[str], cfg: FuzzConfig) -> Formula:
    if len(names) < 2 or rng.random() >= cfg.compound_rate:
        return _literal(rng, names)
    x, y = rng.sample(names, 2)
    lx, ly = Atom(x), Atom(y)
    if rng.random() < 0.5:
        lx = Not(lx)
    if rng.random() < 0.5:
        ly = Not(ly)
    shape = rng.randrange(3)
    if shape == 0:
        return And(lx, ly)
    if shape == 1:
        return Or(lx, ly)
    return Not(And(lx, ly))


def random_theory(rng: random.Random, cfg: FuzzConfig = FuzzConfig()) -> tuple[PrioritisedDefaultTheory, Linearisation]:
    names = [f"p{i}" for i in range(1, cfg.atoms + 1)]
    n_facts = rng.randint(0, min(cfg.max_facts, cfg.atoms))
    facts = [Not(Atom(a)) if rng.random() < 0.5 else Atom(a) for a in rng.sample(names, n_facts)]
    n_defaults = rng.randint(1, cfg.defaults)
    defaults: list[NormalDefault] = []
    attempts = 0
    while len(defaults) < n_defaults and attempts < 50 * cfg.defaults:
        attempts += 1
        r = rng.random()
        if r < cfg.top_antecedent_rate or (not facts and not defaults):
            ante: Formula = TOP
        elif facts and (r < cfg.top_antecedent_rate + cfg.fact_antecedent_rate or not defaults):
            ante = rng.choice(facts)
        else:
            ante = rng.choice(defaults).consequent
        d = NormalDefault(f"d{len(defaults) + 1}", ante, _consequent(rng, names, cfg))
        if d not in defaults:
            defaults.append(d)
    ids = [d.id for d in defaults]
    rng.shuffle(ids)
    chain = list(zip(ids, ids[1:]))
    theory = PrioritisedDefaultTheory(defaults, facts, chain, atoms=names)
    return theory, Linearisation(tuple(ids))


def fuzz_corpus(seed: int, count: int, cfg: FuzzConfig = FuzzConfig()) -> Iterator[tuple[PrioritisedDefaultTheory, Linearisation]]:
    rng = random.Random(seed)
    for _ in range(count):
        yield random_theory(rng, cfg)


@dataclass
class FuzzTally:
    """Counts from checking a fuzz corpus.

    Samples whose argument pool or framework exceeds the size caps are
    counted in ``skipped`` and excluded from every other column.
    """
    count: int = 0
    checked: int = 0
    skipped: int = 0
    verified: int = 0
    unique: int = 0
    nbd: int = 0
    literal: int = 0
    applicable: int = 0
    failures: list = field(default_factory=list)
    skipped_samples: list = field(default_factory=list)

    @property
    def all_verified(self) -> bool:
        return self.verified == self.checked


def check_corpus(seed: int, count: int, cfg: FuzzConfig = FuzzConfig(),
                 sp_applicability: str = "consistent", on_report=None) -> FuzzTally:
    """Verify every sample of ``fuzz_corpus(seed, count, cfg)``.

    ``failures`` collects ``(index, theory, report)`` for samples that fail
    verification; ``on_report(index, theory, report)`` sees every report.
    """
    t = FuzzTally(count=count)
    for k, (theory, lin) in enumerate(fuzz_corpus(seed, count, cfg)):
        try:
            r = verify_representation(theory, lin, sp_applicability=sp_applicability)
        except (PoolTooLarge, FrameworkTooLarge):
            t.skipped += 1
            t.skipped_samples.append(k)
            continue
        t.checked += 1
        t.verified += r.ok
        t.unique += r.stable_count == 1
        t.nbd += r.nbd_agree
        t.literal += r.algorithm_literal
        t.applicable += r.algorithm_applicable
        if not r.ok:
            t.failures.append((k, theory, r))
        if on_report is not None:
            on_report(k, theory, r)
    return t
