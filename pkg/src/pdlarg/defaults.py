"""Prioritised default theories and Brewka-style extension construction.

A priority ``d1 < d2`` means d2 is *more* prioritised.  A linearisation is a
tuple of default ids ordered from least to most prioritised, so its last
element is applied first whenever it is active.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .logic import Formula, Not, Signature, atoms_of, format_formula

__all__ = [
    "NormalDefault", "PrioritisedDefaultTheory", "Linearisation", "Layer",
    "ExtensionTrace", "InconsistentFacts", "TheoryError", "LinearisationError",
    "compute_extension", "enumerate_linearisations", "sceptical_inferences",
    "generating_defaults", "semi_active_defaults",
    "non_blocked_defaults_constructive", "non_blocked_defaults_characterised",
]


class TheoryError(ValueError):
    pass


class InconsistentFacts(TheoryError):
    pass


class LinearisationError(TheoryError):
    pass


@dataclass(frozen=True)
class NormalDefault:
    """The normal default ``antecedent : consequent / consequent``.

    Identity is the syntactic pair; the id is a label only.
    """

    id: str = field(compare=False)
    antecedent: Formula
    consequent: Formula

    def __str__(self):
        return f"{self.id}: {format_formula(self.antecedent)} : {format_formula(self.consequent)}"


def _transitive_closure(pairs: Iterable[tuple[str, str]]) -> frozenset[tuple[str, str]]:
    succ: dict[str, set[str]] = {}
    for a, b in pairs:
        succ.setdefault(a, set()).add(b)
    closure = set()
    for start in list(succ):
        stack = list(succ[start])
        seen: set[str] = set()
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            stack.extend(succ.get(x, ()))
        closure.update((start, y) for y in seen)
    return frozenset(closure)


class PrioritisedDefaultTheory:
    """``<D, W, priority>`` over a fixed finite signature.

    ``priority`` holds pairs ``(lower, higher)`` of default ids and is stored
    transitively closed.  Cycles, duplicate ids and duplicate defaults are
    rejected.
    """

    def __init__(self, defaults: Sequence[NormalDefault], facts: Iterable[Formula],
                 priority: Iterable[tuple[str, str]] = (), atoms: Iterable[str] | None = None,
                 extra_formulas: Iterable[Formula] = ()):
        self.defaults: tuple[NormalDefault, ...] = tuple(defaults)
        self.facts: tuple[Formula, ...] = tuple(dict.fromkeys(facts))
        self.extra_formulas: tuple[Formula, ...] = tuple(dict.fromkeys(extra_formulas))
        ids = [d.id for d in self.defaults]
        if len(set(ids)) != len(ids):
            dup = next(i for i in ids if ids.count(i) > 1)
            raise TheoryError(f"duplicate default id {dup}")
        if len(set(self.defaults)) != len(self.defaults):
            raise TheoryError("duplicate default (same antecedent and consequent)")
        self.by_id = {d.id: d for d in self.defaults}
        edges = list(priority)
        for lo, hi in edges:
            for x in (lo, hi):
                if x not in self.by_id:
                    raise TheoryError(f"priority mentions unknown default {x}")
        self.priority = _transitive_closure(edges)
        for lo, hi in self.priority:
            if lo == hi:
                raise TheoryError(f"cyclic priority through {lo}")

        formulas = list(self.facts) + list(self.extra_formulas)
        for d in self.defaults:
            formulas += [d.antecedent, d.consequent]
        used = set()
        for f in formulas:
            used |= atoms_of(f)
        if atoms is None:
            self.signature = Signature(sorted(used))
        else:
            self.signature = Signature(atoms)
            for f in formulas:
                self.signature.check(f)

    def __repr__(self):
        return (f"PrioritisedDefaultTheory(defaults={[str(d) for d in self.defaults]}, "
                f"facts={[format_formula(f) for f in self.facts]}, priority={sorted(self.priority)})")

    def __eq__(self, other):
        return (isinstance(other, PrioritisedDefaultTheory)
                and [(d.id, d) for d in self.defaults] == [(d.id, d) for d in other.defaults]
                and self.facts == other.facts and self.priority == other.priority
                and self.signature == other.signature
                and self.extra_formulas == other.extra_formulas)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(d.id for d in self.defaults)

    def is_total(self) -> bool:
        n = len(self.defaults)
        return len(self.priority) == n * (n - 1) // 2

    def facts_consistent(self) -> bool:
        return self.signature.consistent(self.facts)

    def require_consistent(self) -> None:
        if not self.facts_consistent():
            raise InconsistentFacts("the facts W are inconsistent")

    def entails(self, premises: Iterable[Formula], query: Formula) -> bool:
        return self.signature.entails(premises, query)


@dataclass(frozen=True)
class Linearisation:
    """Total order over default ids, least prioritised first."""

    order: tuple[str, ...]

    def rank(self) -> dict[str, int]:
        return {d: i for i, d in enumerate(self.order)}

    def less(self, a: str, b: str) -> bool:
        r = self.rank()
        return r[a] < r[b]

    def __str__(self):
        return " < ".join(self.order)

    def validate(self, theory: PrioritisedDefaultTheory) -> None:
        if sorted(self.order) != sorted(theory.ids) or len(set(self.order)) != len(self.order):
            raise LinearisationError("linearisation must list every default exactly once")
        r = self.rank()
        for lo, hi in theory.priority:
            if r[lo] >= r[hi]:
                raise LinearisationError(f"linearisation does not extend priority {lo} < {hi}")


@dataclass(frozen=True)
class Layer:
    applied: NormalDefault | None
    support: tuple[Formula, ...]


@dataclass
class ExtensionTrace:
    theory: PrioritisedDefaultTheory
    linearisation: Linearisation
    layers: list[Layer]

    @property
    def support(self) -> tuple[Formula, ...]:
        return self.layers[-1].support

    def entails(self, query: Formula) -> bool:
        return self.theory.entails(self.support, query)


def _active(theory: PrioritisedDefaultTheory, support, d: NormalDefault) -> bool:
    sig = theory.signature
    return (sig.entails(support, d.antecedent)
            and not sig.entails(support, d.consequent)
            and not sig.entails(support, Not(d.consequent)))


def compute_extension(theory: PrioritisedDefaultTheory,
                      lin: Linearisation | Sequence[str] | None = None) -> ExtensionTrace:
    """Apply the most prioritised active default until none is active."""
    theory.require_consistent()
    if lin is None:
        lins = enumerate_linearisations(theory)
        if len(lins) != 1:
            raise LinearisationError("priority is not total; supply a linearisation")
        lin = lins[0]
    elif not isinstance(lin, Linearisation):
        lin = Linearisation(tuple(lin))
    lin.validate(theory)
    by_priority = [theory.by_id[i] for i in reversed(lin.order)]
    support = tuple(theory.facts)
    layers = [Layer(None, support)]
    while True:
        pick = next((d for d in by_priority if _active(theory, support, d)), None)
        if pick is None:
            break
        support = support + (pick.consequent,)
        layers.append(Layer(pick, support))
    return ExtensionTrace(theory, lin, layers)


def enumerate_linearisations(theory: PrioritisedDefaultTheory, cap: int = 8) -> list[Linearisation]:
    """All total orders extending the priority, lexicographic by default id."""
    n = len(theory.defaults)
    if n > cap:
        raise LinearisationError(
            f"{n} defaults exceed the enumeration cap of {cap}; pass an explicit linearisation")
    ids = sorted(theory.ids)
    below: dict[str, set[str]] = {i: set() for i in ids}
    for lo, hi in theory.priority:
        below[hi].add(lo)
    out: list[Linearisation] = []

    def extend(prefix: list[str], placed: set[str]):
        if len(prefix) == n:
            out.append(Linearisation(tuple(prefix)))
            return
        for i in ids:
            if i not in placed and below[i] <= placed:
                prefix.append(i)
                placed.add(i)
                extend(prefix, placed)
                placed.discard(i)
                prefix.pop()

    extend([], set())
    return out


def sceptical_inferences(theory: PrioritisedDefaultTheory, queries: Iterable[Formula],
                         cap: int = 8) -> list[Formula]:
    queries = list(dict.fromkeys(queries))
    traces = [compute_extension(theory, lin) for lin in enumerate_linearisations(theory, cap)]
    return [q for q in queries if all(t.entails(q) for t in traces)]


def _ordered(theory: PrioritisedDefaultTheory, chosen) -> list[NormalDefault]:
    chosen = set(chosen)
    return [d for d in theory.defaults if d in chosen]


def generating_defaults(trace: ExtensionTrace) -> list[NormalDefault]:
    applied = [layer.applied for layer in trace.layers if layer.applied is not None]
    return _ordered(trace.theory, applied)


def semi_active_defaults(trace: ExtensionTrace) -> list[NormalDefault]:
    """Non-generating defaults whose antecedent and consequent hold in E
    while the negated consequent does not."""
    gd = set(generating_defaults(trace))
    out = []
    for d in trace.theory.defaults:
        if d in gd:
            continue
        if (trace.entails(d.antecedent) and trace.entails(d.consequent)
                and not trace.entails(Not(d.consequent))):
            out.append(d)
    return out


def non_blocked_defaults_constructive(trace: ExtensionTrace) -> list[NormalDefault]:
    return _ordered(trace.theory, generating_defaults(trace) + semi_active_defaults(trace))


def non_blocked_defaults_characterised(theory: PrioritisedDefaultTheory,
                                       trace: ExtensionTrace) -> list[NormalDefault]:
    return [d for d in theory.defaults
            if theory.entails(trace.support, d.antecedent)
            and not theory.entails(trace.support, Not(d.consequent))]
