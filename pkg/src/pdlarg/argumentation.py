"""Structured arguments built from a linearised prioritised default theory.

Defaults become defeasible rules, the facts become axioms and classical
entailment plays the role of the strict rules.  The argument space is made
finite by a canonical form:

* a strict step combines a set of non-strict-step arguments (axioms or
  defeasible steps), so strict steps never sit directly on strict steps;
* its conclusion lies in the formula universe, its premises are consistent
  and no proper subset of them entails the conclusion;
* a defeasible step never repeats a rule already used below it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .defaults import Linearisation, NormalDefault, PrioritisedDefaultTheory, compute_extension
from .logic import Formula, Not, TOP, Top, contraries, format_formula
from .orders import Kind, Outcome, Preset, SetComparison

__all__ = [
    "DefeasibleRule", "RuleOrder", "Argument", "FormulaUniverse", "Instantiation",
    "PoolTooLarge", "instantiate", "structure_preference_order", "Attack",
    "AXIOM", "DEFEASIBLE", "STRICT", "SP_APPLICABILITY",
]

AXIOM = "axiom"
DEFEASIBLE = "defeasible_step"
STRICT = "strict_step"


class PoolTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class DefeasibleRule:
    """``antecedent => consequent``, the image of one default."""

    name: str = field(compare=False)
    antecedent: Formula
    consequent: Formula
    source: str = field(compare=False)

    def __str__(self):
        return f"{self.name}: {format_formula(self.antecedent)} => {format_formula(self.consequent)}"


def rule_name(default_id: str) -> str:
    """``d3`` becomes ``r3``; other ids are prefixed with ``r_``."""
    if default_id[:1] == "d" and default_id[1:].isdigit():
        return "r" + default_id[1:]
    return "r_" + default_id


@dataclass(frozen=True)
class StrictRule:
    antecedents: frozenset
    conclusion: Formula


class Argument:
    """A node of an argument tree; instances are interned by the pool.

    ``rule_mask`` encodes DR over the instantiation's rule indices.
    """

    __slots__ = ("kind", "conclusion", "subs", "rule", "rule_index", "rule_mask",
                 "premises", "strict_rules", "subarguments", "label", "_hash", "uid")

    def __init__(self, kind: str, conclusion: Formula, subs: tuple = (),
                 rule: DefeasibleRule | None = None, rule_index: int = -1):
        self.kind = kind
        self.conclusion = conclusion
        self.subs = subs
        self.rule = rule
        self.rule_index = rule_index
        self._hash = hash((kind, conclusion, rule_index, subs))
        mask = 0
        prem: frozenset = frozenset()
        srules: frozenset = frozenset()
        subargs = {self}
        for s in subs:
            mask |= s.rule_mask
            prem |= s.premises
            srules |= s.strict_rules
            subargs |= s.subarguments
        if kind == AXIOM:
            prem = frozenset({conclusion})
        elif kind == DEFEASIBLE:
            mask |= 1 << rule_index
        else:
            srules |= {StrictRule(frozenset(s.conclusion for s in subs), conclusion)}
        self.rule_mask = mask
        self.premises = prem
        self.strict_rules = srules
        self.subarguments = frozenset(subargs)
        self.label = self._render()
        self.uid = -1

    def _render(self) -> str:
        conc = format_formula(self.conclusion, neg="~")
        if self.kind == AXIOM:
            return f"[{conc}]"
        if self.kind == DEFEASIBLE:
            if not self.subs:
                return f"[true => {conc}]"
            sub = self.subs[0]
            if sub.kind == STRICT and not sub.subs and isinstance(sub.conclusion, Top):
                return f"[true => {conc}]"
            return f"[{sub.label} => {conc}]"
        return f"[{', '.join(s.label for s in self.subs)}{' ' if self.subs else ''}-> {conc}]"

    @property
    def key(self):
        return (self.kind, self.conclusion, self.rule_index, self.subs)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Argument) and self._hash == other._hash and self.key == other.key

    def __repr__(self):
        return f"Argument({self.label})"

    def __str__(self):
        return self.label

    @property
    def is_strict(self) -> bool:
        return self.rule_mask == 0

    @property
    def is_firm(self) -> bool:
        # no ordinary premises exist in this instantiation
        return True

    @property
    def top_rule(self):
        if self.kind == DEFEASIBLE:
            return self.rule
        if self.kind == STRICT:
            return next(iter(r for r in self.strict_rules
                             if r.conclusion == self.conclusion
                             and r.antecedents == frozenset(s.conclusion for s in self.subs)))
        return None

    @property
    def top_is_defeasible(self) -> bool:
        return self.kind == DEFEASIBLE

    @property
    def size(self) -> int:
        return len(self.subarguments)


class FormulaUniverse:
    """Facts, rule antecedents and consequents, extra formulas, all their
    syntactic contraries, and ``true``."""

    def __init__(self, generators: Iterable[Formula]):
        out: dict[Formula, None] = {TOP: None}
        gens = list(dict.fromkeys(generators))
        for g in gens:
            out[g] = None
        for g in gens:
            for c in sorted(contraries(g), key=format_formula):
                out[c] = None
        self.formulas: tuple[Formula, ...] = tuple(out)
        self._set = frozenset(out)

    def __contains__(self, f):
        return f in self._set

    def __iter__(self):
        return iter(self.formulas)

    def __len__(self):
        return len(self.formulas)


@dataclass(frozen=True)
class RuleOrder:
    """Rules from least to most preferred under the base order and under the
    structure-preference order."""

    base: tuple[DefeasibleRule, ...]
    sp: tuple[DefeasibleRule, ...]

    def base_names(self):
        return tuple(r.name for r in self.base)

    def sp_names(self):
        return tuple(r.name for r in self.sp)


@dataclass(frozen=True)
class Attack:
    attacker: Argument
    target: Argument
    target_sub: Argument


def _rank_leq(names_in_order: Sequence[str]):
    return [(a, b) for i, a in enumerate(names_in_order) for b in names_in_order[i:]]


SP_APPLICABILITY = ("consistent", "classical", "active")


def structure_preference_order(rules: Sequence[DefeasibleRule], base: Sequence[DefeasibleRule],
                               axioms: Iterable[Formula], signature,
                               applicability: str = "consistent") -> tuple[DefeasibleRule, ...]:
    """Return rules from least to greatest under the structure preference.

    At each step the base-greatest unselected rule whose antecedent is a
    conclusion of some argument built from the selected rules is chosen; if
    none is applicable, the base-greatest unselected rule is chosen.  The
    first selected rule is the greatest.

    With ``applicability="consistent"`` an antecedent counts as concluded
    when a consistent set of available conclusions entails it, which is
    exactly what the canonical argument pool contains.  ``"classical"`` lets
    an inconsistent set entail everything.

    ``"active"`` is a repair rather than a reading: only rules picked while
    their consequent is not contradicted contribute conclusions, and a rule
    whose consequent is contradicted is not applicable.  The selection then
    follows the order in which the default logic applies defaults.
    """
    if applicability not in SP_APPLICABILITY:
        raise ValueError(f"unknown applicability {applicability!r}")
    axioms = list(axioms)
    remaining = list(reversed(base))  # most preferred first
    selected: list[DefeasibleRule] = []
    if applicability == "active":
        known = list(axioms)
        while remaining:
            pick = next((r for r in remaining if signature.entails(known, r.antecedent)
                         and not signature.entails(known, Not(r.consequent))), None)
            if pick is None:
                pick = remaining[0]
            else:
                known.append(pick.consequent)
            selected.append(pick)
            remaining.remove(pick)
        return tuple(reversed(selected))
    derives = signature.consistently_entails if applicability == "consistent" else signature.entails
    while remaining:
        known = list(axioms)
        pending = list(selected)
        changed = True
        while changed:
            changed = False
            for r in list(pending):
                if derives(known, r.antecedent):
                    known.append(r.consequent)
                    pending.remove(r)
                    changed = True
        pick = next((r for r in remaining if derives(known, r.antecedent)), remaining[0])
        selected.append(pick)
        remaining.remove(pick)
    return tuple(reversed(selected))


class Instantiation:
    """The argumentation counterpart of a linearised theory."""

    def __init__(self, theory: PrioritisedDefaultTheory, lin: Linearisation,
                 max_arguments: int = 20000, sp_applicability: str = "consistent",
                 strict_rules: bool = True):
        theory.require_consistent()
        lin.validate(theory)
        self.theory = theory
        self.linearisation = lin
        self.signature = theory.signature
        self.max_arguments = max_arguments
        # without strict rules, rules with antecedent true fire on no argument
        self.strict_rules = strict_rules
        self.rules: tuple[DefeasibleRule, ...] = tuple(
            DefeasibleRule(rule_name(d.id), d.antecedent, d.consequent, d.id) for d in theory.defaults)
        self.rule_index = {r.name: i for i, r in enumerate(self.rules)}
        self.rule_by_default = {r.source: r for r in self.rules}
        self.default_by_rule = {r.name: theory.by_id[r.source] for r in self.rules}
        base = tuple(self.rule_by_default[d] for d in lin.order)
        sp = structure_preference_order(self.rules, base, theory.facts, self.signature,
                                        sp_applicability)
        self.order = RuleOrder(base, sp)
        self.axioms: tuple[Formula, ...] = theory.facts
        gens = list(theory.facts) + list(theory.extra_formulas)
        for r in self.rules:
            gens += [r.antecedent, r.consequent]
        self.universe = FormulaUniverse(gens)
        names = [r.name for r in self.rules]
        self.base_preset = Preset(names, _rank_leq(self.order.base_names()))
        self.sp_preset = Preset(names, _rank_leq(self.order.sp_names()))
        self._pool: tuple[Argument, ...] | None = None
        self._comparisons: dict[Kind, SetComparison] = {}

    # --- rules ---------------------------------------------------------------

    def f(self, d: NormalDefault) -> DefeasibleRule:
        return self.rule_by_default[d.id]

    def f_inverse(self, r: DefeasibleRule) -> NormalDefault:
        return self.default_by_rule[r.name]

    def rules_mask(self, rules: Iterable[DefeasibleRule | str]) -> int:
        m = 0
        for r in rules:
            m |= 1 << self.rule_index[r if isinstance(r, str) else r.name]
        return m

    def rules_of_mask(self, mask: int) -> frozenset[DefeasibleRule]:
        return frozenset(r for i, r in enumerate(self.rules) if (mask >> i) & 1)

    def names_of_mask(self, mask: int) -> list[str]:
        """Rule names in declaration order."""
        return [r.name for i, r in enumerate(self.rules) if (mask >> i) & 1]

    def dr(self, a: Argument) -> frozenset[DefeasibleRule]:
        return self.rules_of_mask(a.rule_mask)

    def dr_names(self, a: Argument) -> frozenset[str]:
        return frozenset(r.name for r in self.dr(a))

    # --- argument construction -------------------------------------------------

    @property
    def pool(self) -> tuple[Argument, ...]:
        if self._pool is None:
            self._pool = self._build_pool()
        return self._pool

    def _build_pool(self) -> tuple[Argument, ...]:
        sig = self.signature
        interned: dict[tuple, Argument] = {}
        order: list[Argument] = []

        def intern(arg: Argument) -> Argument:
            hit = interned.get(arg.key)
            if hit is not None:
                return hit
            interned[arg.key] = arg
            arg.uid = len(order)
            order.append(arg)
            if len(order) > self.max_arguments:
                raise PoolTooLarge(f"argument pool exceeds {self.max_arguments} arguments")
            return arg

        base: list[Argument] = [intern(Argument(AXIOM, phi)) for phi in self.axioms]
        by_ante: dict[Formula, list[tuple[int, DefeasibleRule]]] = {}
        for i, r in enumerate(self.rules):
            by_ante.setdefault(r.antecedent, []).append((i, r))
        targets = [(phi, sig.mask(phi)) for phi in self.universe]
        strict_seen: set[tuple] = set()
        strict: list[Argument] = []
        expanded: set[Argument] = set()

        if not self.strict_rules:
            for i, r in by_ante.pop(TOP, ()):
                base.append(intern(Argument(DEFEASIBLE, r.consequent, (), r, i)))
        while True:
            if self.strict_rules:
                for s in self._strict_steps(base, targets, strict_seen):
                    strict.append(intern(s))
            fresh = []
            for x in base + strict:
                if x in expanded:
                    continue
                expanded.add(x)
                for i, r in by_ante.get(x.conclusion, ()):
                    if not (x.rule_mask >> i) & 1:
                        fresh.append(intern(Argument(DEFEASIBLE, r.consequent, (x,), r, i)))
            if not fresh:
                break
            base.extend(fresh)
        return tuple(order)

    def _strict_steps(self, base: list[Argument], targets, seen: set) -> list[Argument]:
        """Canonical strict steps over ``base`` not produced before."""
        sig = self.signature
        by_conc: dict[Formula, list[Argument]] = {}
        for a in base:
            by_conc.setdefault(a.conclusion, []).append(a)
        by_mask: dict[int, list[Formula]] = {}
        for phi in by_conc:
            by_mask.setdefault(sig.mask(phi), []).append(phi)
        masks = sorted(by_mask)
        full = sig.full
        out: list[Argument] = []
        for phi, t in targets:
            bad = full & ~t
            for combo in _minimal_covers(masks, full, bad):
                formula_choices = [by_mask[m] for m in combo]
                for concs in itertools.product(*formula_choices):
                    if len(concs) == 1 and concs[0] == phi:
                        continue
                    for subs in itertools.product(*(by_conc[c] for c in concs)):
                        subs = tuple(sorted(subs, key=_sort_key))
                        key = (phi, subs)
                        if key in seen:
                            continue
                        seen.add(key)
                        out.append(Argument(STRICT, phi, subs))
        return out

    def args(self, rules_subset: Iterable[DefeasibleRule | str] | int = ()) -> list[Argument]:
        """Args(R): pooled arguments whose defeasible rules all lie in R."""
        m = rules_subset if isinstance(rules_subset, int) else self.rules_mask(rules_subset)
        return [a for a in self.pool if a.rule_mask & ~m == 0]

    def argument(self, label: str) -> Argument:
        for a in self.pool:
            if a.label == label:
                return a
        raise KeyError(label)

    def find(self, conclusion: Formula, rules: Iterable[DefeasibleRule | str] | None = None) -> list[Argument]:
        out = [a for a in self.pool if a.conclusion == conclusion]
        if rules is not None:
            m = self.rules_mask(rules)
            out = [a for a in out if a.rule_mask == m]
        return out

    # --- attacks and preferences ---------------------------------------------

    def attacks(self, pool: Sequence[Argument] | None = None) -> list[Attack]:
        """Rebuttals (attacker, target, attacked subargument) within ``pool``."""
        pool = self.pool if pool is None else list(pool)
        members = set(pool)
        for a in pool:
            if not a.subarguments <= members:
                raise ValueError("pool is not subargument-closed")
        pos = {a: i for i, a in enumerate(pool)}
        by_conc: dict[Formula, list[Argument]] = {}
        for a in pool:
            by_conc.setdefault(a.conclusion, []).append(a)
        attackers_of: dict[Argument, list[Argument]] = {}
        for b in pool:
            if b.kind == DEFEASIBLE:
                found = []
                for c in contraries(b.rule.consequent):
                    found.extend(by_conc.get(c, ()))
                if found:
                    attackers_of[b] = sorted(set(found), key=pos.__getitem__)
        out = []
        for b in pool:
            for sub in sorted(b.subarguments & attackers_of.keys(), key=_sort_key):
                for a in attackers_of[sub]:
                    out.append(Attack(a, b, sub))
        return out

    def comparison(self, kind: Kind | str) -> SetComparison:
        kind = Kind(kind)
        cmp = self._comparisons.get(kind)
        if cmp is None:
            preset = self.sp_preset if kind is Kind.STRUCTURE_PREFERENCE else self.base_preset
            cmp = SetComparison(kind, preset)
            self._comparisons[kind] = cmp
        return cmp

    def strictly_less(self, kind: Kind | str, a: Argument, b: Argument) -> bool:
        """``a`` is strictly less preferred than ``b``."""
        return self.comparison(kind).lt_m(a.rule_mask, b.rule_mask)

    def preference(self, kind: Kind | str, a: Argument, b: Argument) -> Outcome:
        cmp = self.comparison(kind)
        g, h = a.rule_mask, b.rule_mask
        if g == h:
            return Outcome.EQUAL
        lo, hi = cmp.lt_m(g, h), cmp.lt_m(h, g)
        if lo and not hi:
            return Outcome.STRICTLY_LESS
        if hi and not lo:
            return Outcome.STRICTLY_GREATER
        return Outcome.INCOMPARABLE

    def strict_extensions(self, args: Sequence[Argument], pool: Sequence[Argument] | None = None) -> list[Argument]:
        """Pooled arguments with the same defeasible rules as ``args`` that
        keep all their strict rules and axiom premises."""
        pool = self.pool if pool is None else pool
        dr = 0
        sr: frozenset = frozenset()
        prem: frozenset = frozenset()
        for a in args:
            dr |= a.rule_mask
            sr |= a.strict_rules
            prem |= a.premises
        return [x for x in pool if x.rule_mask == dr and sr <= x.strict_rules and prem <= x.premises]


def _sort_key(a: Argument):
    return (a.size, a.label)


def _minimal_covers(masks: Sequence[int], full: int, bad: int):
    """Subsets of ``masks`` whose intersection is nonempty and excludes every
    valuation in ``bad``, and that are minimal with that property."""
    if bad == 0:
        yield ()
        return
    n = len(masks)
    chosen: list[int] = []

    def minimal(sel) -> bool:
        for skip in range(len(sel)):
            acc = full
            for j, m in enumerate(sel):
                if j != skip:
                    acc &= m
            if acc & bad == 0:
                return False
        return True

    def dfs(start: int, acc: int):
        for i in range(start, n):
            m = masks[i]
            new = acc & m
            if new == 0 or (new & bad) == (acc & bad):
                continue
            chosen.append(m)
            if new & bad == 0:
                if minimal(chosen):
                    yield tuple(chosen)
            else:
                yield from dfs(i + 1, new)
            chosen.pop()

    yield from dfs(0, full)


def instantiate(theory: PrioritisedDefaultTheory, lin: Linearisation | Sequence[str] | None = None,
                **kwargs) -> Instantiation:
    if lin is None:
        lin = compute_extension(theory).linearisation
    elif not isinstance(lin, Linearisation):
        lin = Linearisation(tuple(lin))
    return Instantiation(theory, lin, **kwargs)
