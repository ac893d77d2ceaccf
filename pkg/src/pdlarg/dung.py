"""Abstract frameworks, Dung semantics, and the defeat graph of an
instantiated theory, including the stable-extension construction and the
check that argumentation and default reasoning agree."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .argumentation import DEFEASIBLE, Argument, Attack, Instantiation, instantiate
from .defaults import (Linearisation, PrioritisedDefaultTheory, compute_extension,
                       non_blocked_defaults_characterised, non_blocked_defaults_constructive)
from .logic import Formula, contraries, format_formula
from .orders import Kind

__all__ = [
    "AbstractFramework", "ExtensionSet", "SEMANTICS", "FrameworkTooLarge",
    "compute_semantics", "grounded", "complete_extensions", "preferred_extensions",
    "stable_extensions", "is_conflict_free", "DefeatGraph", "defeat_graph",
    "attack_conflict_free", "generate_stable_extension", "ALGORITHM_VARIANTS", "sceptical_conclusions",
    "RepresentationReport", "verify_representation", "is_stable",
]

SEMANTICS = ("complete", "preferred", "grounded", "stable")


class FrameworkTooLarge(RuntimeError):
    pass


class AbstractFramework:
    """Nodes and directed conflicts ``(attacker, target)``.

    Internally each node keeps the index sets of its attackers and targets;
    the pair set ``conflicts`` is only materialised on request.
    """

    def __init__(self, nodes: Iterable, conflicts: Iterable[tuple] = ()):
        self.nodes = list(nodes)
        self.index = {n: i for i, n in enumerate(self.nodes)}
        if len(self.index) != len(self.nodes):
            raise ValueError("duplicate framework node")
        n = len(self.nodes)
        self.attackers: list[set[int]] = [set() for _ in range(n)]
        self.attacked: list[set[int]] = [set() for _ in range(n)]
        for a, b in conflicts:
            if a not in self.index or b not in self.index:
                raise ValueError("conflict mentions a node outside the framework")
            ia, ib = self.index[a], self.index[b]
            self.attackers[ib].add(ia)
            self.attacked[ia].add(ib)
        self._conflicts: set | None = None

    @classmethod
    def from_attackers(cls, nodes: Iterable, attackers: Sequence[Iterable[int]]) -> "AbstractFramework":
        """Build from the attacker indices of each node."""
        af = cls(nodes)
        if len(attackers) != len(af.nodes):
            raise ValueError("one attacker set per node is required")
        for ib, atts in enumerate(attackers):
            for ia in atts:
                af.attackers[ib].add(ia)
                af.attacked[ia].add(ib)
        return af

    @property
    def conflicts(self) -> set:
        if self._conflicts is None:
            nodes = self.nodes
            self._conflicts = {(nodes[ia], nodes[ib]) for ib, atts in enumerate(self.attackers)
                               for ia in atts}
        return self._conflicts

    def __repr__(self):
        return f"AbstractFramework({len(self.nodes)} nodes, {sum(map(len, self.attackers))} conflicts)"

    def __len__(self):
        return len(self.nodes)

    def to_nodes(self, idx: Iterable[int]) -> frozenset:
        return frozenset(self.nodes[i] for i in idx)


@dataclass
class ExtensionSet:
    semantics: str
    extensions: list[frozenset]

    def __len__(self):
        return len(self.extensions)

    def __iter__(self):
        return iter(self.extensions)

    def sceptical(self) -> frozenset:
        if not self.extensions:
            return frozenset()
        out = self.extensions[0]
        for e in self.extensions[1:]:
            out = out & e
        return out


def is_conflict_free(af: AbstractFramework, members: Iterable) -> bool:
    idx = {af.index[m] for m in members}
    return not any(af.attackers[i] & idx for i in idx)


def _grounded_idx(af: AbstractFramework) -> set[int]:
    n = len(af)
    label_in: set[int] = set()
    label_out: set[int] = set()
    changed = True
    while changed:
        changed = False
        for i in range(n):
            if i in label_in or i in label_out:
                continue
            if af.attackers[i] <= label_out:
                label_in.add(i)
                label_out.update(af.attacked[i])
                changed = True
    return label_in


def grounded(af: AbstractFramework) -> frozenset:
    """Least fixpoint of the characteristic function."""
    return af.to_nodes(_grounded_idx(af))


IN, OUT, UNDEC = 1, 2, 3
# pools reached by small random theories stay well below this
VERIFY_LIMIT = 50000


def _complete_labellings(af: AbstractFramework, stable: bool) -> list[set[int]]:
    """Enumerate complete (or stable) labellings by propagation and branching.

    Returns the IN sets.
    """
    n = len(af)
    att, tgt = af.attackers, af.attacked

    def legal(lab: list[int], i: int) -> bool:
        v = lab[i]
        atts = att[i]
        if v == IN:
            return all(lab[j] in (0, OUT) for j in atts)
        if v == OUT:
            return any(lab[j] in (0, IN) for j in atts)
        return (all(lab[j] != IN for j in atts)
                and any(lab[j] in (0, UNDEC) for j in atts))

    def propagate(lab: list[int], queue: list[int]) -> bool:
        while queue:
            i = queue.pop()
            if lab[i] == IN:
                for k in att[i] | tgt[i]:
                    if lab[k] == 0:
                        lab[k] = OUT
                        queue.append(k)
                    elif lab[k] != OUT:
                        return False
            for k in (i, *tgt[i]):
                if lab[k] == 0:
                    atts = att[k]
                    if any(lab[j] == IN for j in atts):
                        lab[k] = OUT
                        queue.append(k)
                    elif all(lab[j] == OUT for j in atts):
                        lab[k] = IN
                        queue.append(k)
                    continue
                if not legal(lab, k):
                    return False
                if lab[k] == OUT and not any(lab[j] == IN for j in att[k]):
                    cand = [j for j in att[k] if lab[j] == 0]
                    if len(cand) == 1:
                        lab[cand[0]] = IN
                        queue.append(cand[0])
        return True

    results: list[frozenset] = []
    choices = (IN, OUT) if stable else (IN, OUT, UNDEC)

    start = [0] * n
    queue = [i for i in range(n) if not att[i]]
    for i in queue:
        start[i] = IN
    stack = [start] if propagate(start, queue) else []
    while stack:
        lab = stack.pop()
        try:
            i = lab.index(0)
        except ValueError:
            if all(legal(lab, k) for k in range(n)):
                results.append(frozenset(k for k in range(n) if lab[k] == IN))
            continue
        for v in reversed(choices):
            trial = lab[:]
            trial[i] = v
            if legal(trial, i) and propagate(trial, [i]):
                stack.append(trial)
    return [set(r) for r in sorted(set(results), key=sorted)]


def complete_extensions(af: AbstractFramework, limit: int = 64) -> list[frozenset]:
    if len(af) > limit:
        raise FrameworkTooLarge(f"{len(af)} nodes exceed the enumeration limit of {limit}")
    return [af.to_nodes(s) for s in _complete_labellings(af, stable=False)]


def stable_extensions(af: AbstractFramework, limit: int = 5000) -> list[frozenset]:
    if len(af) > limit:
        raise FrameworkTooLarge(f"{len(af)} nodes exceed the enumeration limit of {limit}")
    return [af.to_nodes(s) for s in _complete_labellings(af, stable=True)]


def preferred_extensions(af: AbstractFramework, limit: int = 64) -> list[frozenset]:
    comp = complete_extensions(af, limit)
    return [e for e in comp if not any(e < f for f in comp)]


def compute_semantics(af: AbstractFramework, semantics: str, limit: int | None = None) -> ExtensionSet:
    if semantics not in SEMANTICS:
        raise ValueError(f"unknown semantics {semantics!r}")
    kw = {} if limit is None else {"limit": limit}
    if semantics == "grounded":
        exts = [grounded(af)]
    elif semantics == "complete":
        exts = complete_extensions(af, **kw)
    elif semantics == "preferred":
        exts = preferred_extensions(af, **kw)
    else:
        exts = stable_extensions(af, **kw)
    return ExtensionSet(semantics, exts)


# --- instantiated frameworks -----------------------------------------------

class DefeatGraph:
    """Defeats of an instantiated pool under one argument preference.

    ``defeaters[i]`` holds the indices of the arguments defeating
    ``pool[i]``.  The attack triples are computed only when asked for, since
    their number grows with every superargument of an attacked argument.
    """

    def __init__(self, instantiation: Instantiation, kind: Kind, pool: list[Argument],
                 defeaters: list[set[int]]):
        self.instantiation = instantiation
        self.kind = kind
        self.pool = pool
        self.defeaters = defeaters
        self._attacks: list[Attack] | None = None
        self._defeats: set | None = None
        self._framework: AbstractFramework | None = None

    @property
    def attacks(self) -> list[Attack]:
        if self._attacks is None:
            self._attacks = self.instantiation.attacks(self.pool)
        return self._attacks

    @property
    def defeats(self) -> set[tuple[Argument, Argument]]:
        if self._defeats is None:
            pool = self.pool
            self._defeats = {(pool[ia], pool[ib]) for ib, atts in enumerate(self.defeaters)
                             for ia in atts}
        return self._defeats

    @property
    def framework(self) -> AbstractFramework:
        if self._framework is None:
            self._framework = AbstractFramework.from_attackers(self.pool, self.defeaters)
        return self._framework

    @property
    def attack_framework(self) -> AbstractFramework:
        return AbstractFramework(self.pool, {(a.attacker, a.target) for a in self.attacks})


def defeat_graph(inst: Instantiation, kind: Kind | str = Kind.STRUCTURE_PREFERENCE,
                 pool: Sequence[Argument] | None = None) -> DefeatGraph:
    """A defeats B iff A attacks B on some B' that is not strictly preferred
    to A; the comparison is made at B'."""
    kind = Kind(kind)
    pool = list(inst.pool if pool is None else pool)
    pos = {a: i for i, a in enumerate(pool)}
    for a in pool:
        if not a.subarguments <= pos.keys():
            raise ValueError("pool is not subargument-closed")
    by_conc: dict[Formula, list[int]] = {}
    for i, a in enumerate(pool):
        by_conc.setdefault(a.conclusion, []).append(i)
    cmp = inst.comparison(kind)
    # defeaters of each attacked subargument, compared at that subargument
    at_sub: dict[Argument, frozenset[int]] = {}
    for s in pool:
        if s.kind != DEFEASIBLE:
            continue
        found = set()
        for c in contraries(s.rule.consequent):
            for i in by_conc.get(c, ()):
                if not cmp.lt_m(pool[i].rule_mask, s.rule_mask):
                    found.add(i)
        if found:
            at_sub[s] = frozenset(found)
    defeaters: list[set[int]] = []
    for b in pool:
        d: set[int] = set()
        for s in b.subarguments:
            hit = at_sub.get(s)
            if hit:
                d |= hit
        defeaters.append(d)
    return DefeatGraph(inst, kind, pool, defeaters)


def attack_conflict_free(args: Iterable[Argument]) -> bool:
    """No member concludes a contrary of another member's top defeasible
    consequent.  Membership of attacked subarguments is implied by
    subargument closure of the sets this is used on."""
    args = list(args)
    concs = {a.conclusion for a in args}
    for a in args:
        if a.kind == DEFEASIBLE and contraries(a.rule.consequent) & concs:
            return False
    return True


ALGORITHM_VARIANTS = ("literal", "applicable")


def generate_stable_extension(inst: Instantiation, variant: str = "literal") -> tuple[list[Argument], int]:
    """Start from the strict arguments and add rules from SP-greatest to
    SP-least whenever the enlarged set stays attack-conflict-free.

    ``variant="literal"`` makes one pass over all rules.  A rule whose
    antecedent is not yet concluded adds no arguments and is accepted
    vacuously, which can later force out a rule that the default logic
    applies.  ``variant="applicable"`` only decides a rule once it adds
    arguments to the current set, and restarts from the SP-greatest
    undecided rule after every acceptance, as default application does.

    Returns the arguments and the mask of accepted rules.
    """
    if variant not in ALGORITHM_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    inst.theory.require_consistent()
    accepted = 0
    order = list(reversed(inst.order.sp))
    if variant == "literal":
        for r in order:
            trial = accepted | inst.rules_mask([r])
            if attack_conflict_free(inst.args(trial)):
                accepted = trial
        return inst.args(accepted), accepted
    undecided = list(order)
    progress = True
    while progress:
        progress = False
        current = len(inst.args(accepted))
        for r in undecided:
            trial = accepted | inst.rules_mask([r])
            grown = inst.args(trial)
            if len(grown) == current:
                continue
            undecided.remove(r)
            if attack_conflict_free(grown):
                accepted = trial
            progress = True
            break
    return inst.args(accepted), accepted


def sceptical_conclusions(extensions: ExtensionSet | Sequence[Iterable[Argument]]) -> set[Formula]:
    exts = list(extensions.extensions if isinstance(extensions, ExtensionSet) else extensions)
    if not exts:
        raise ValueError("no extensions to draw sceptical conclusions from")
    common = set(exts[0])
    for e in exts[1:]:
        common &= set(e)
    return {a.conclusion for a in common}


@dataclass
class RepresentationReport:
    """Outcome of comparing the two pipelines on one linearised theory.

    ``direction1``: Args(f(NBD)) is the only stable extension of the defeat
    graph.  ``direction2``: the conclusions of that extension and the default
    extension agree on the formula universe and their supports are
    equivalent.  The greedy construction is reported separately, once as
    written (``algorithm_literal``) and once deciding rules only when they
    add arguments (``algorithm_applicable``).
    """

    theory: PrioritisedDefaultTheory
    linearisation: Linearisation
    direction1: bool
    direction2: bool
    nbd_agree: bool
    stable_count: int
    algorithm_literal: bool
    algorithm_applicable: bool
    grounded_equals_stable: bool
    supports_equivalent: bool
    extension_support: tuple[Formula, ...]
    nbd: list[str]
    accepted_literal: list[str]
    accepted_applicable: list[str]
    missing_in_args: list[str] = field(default_factory=list)
    extra_in_args: list[str] = field(default_factory=list)
    only_in_pdl: list[str] = field(default_factory=list)
    only_in_arguments: list[str] = field(default_factory=list)
    pool_size: int = 0

    @property
    def ok(self) -> bool:
        return self.direction1 and self.direction2 and self.nbd_agree

    def summary(self) -> str:
        def flag(v, good="pass", bad="FAIL"):
            return good if v else bad
        lines = [
            f"linearisation: {self.linearisation}",
            f"extension: Th({{{', '.join(format_formula(f) for f in self.extension_support)}}})",
            f"non-blocked defaults: {', '.join(self.nbd) or '-'}",
            f"arguments: {self.pool_size}, stable extensions: {self.stable_count}",
            f"direction 1 (Args(f(NBD)) is the unique stable extension): {flag(self.direction1)}",
            f"direction 2 (conclusions agree with the extension): {flag(self.direction2)}",
            f"NBD definitions agree: {flag(self.nbd_agree, 'yes', 'NO')}",
            f"greedy construction as written: {flag(self.algorithm_literal, 'matches', 'DIFFERS')}"
            f" (rules {', '.join(self.accepted_literal) or '-'})",
            f"greedy construction over applicable rules: {flag(self.algorithm_applicable, 'matches', 'DIFFERS')}"
            f" (rules {', '.join(self.accepted_applicable) or '-'})",
            f"grounded equals stable: {flag(self.grounded_equals_stable, 'yes', 'no')}",
        ]
        for name in ("missing_in_args", "extra_in_args", "only_in_pdl", "only_in_arguments"):
            vals = getattr(self, name)
            if vals:
                lines.append(f"{name.replace('_', ' ')}: {', '.join(vals)}")
        return "\n".join(lines)


def verify_representation(theory: PrioritisedDefaultTheory, lin: Linearisation | Sequence[str] | None = None,
                          inst: Instantiation | None = None,
                          sp_applicability: str = "consistent") -> RepresentationReport:
    """Run the default-logic and argumentation pipelines separately and
    compare them.  ``sp_applicability`` is passed to the instantiation when
    ``inst`` is not given."""
    trace = compute_extension(theory, lin)
    lin = trace.linearisation
    sig = theory.signature
    nbd_c = non_blocked_defaults_constructive(trace)
    nbd_x = non_blocked_defaults_characterised(theory, trace)

    if inst is None:
        inst = instantiate(theory, lin, sp_applicability=sp_applicability)
    af = defeat_graph(inst, Kind.STRUCTURE_PREFERENCE).framework
    stables = stable_extensions(af, limit=VERIFY_LIMIT)
    ground = grounded(af)
    unique = stables[0] if len(stables) == 1 else None

    nbd_args = frozenset(inst.args([inst.f(d) for d in nbd_x]))
    direction1 = unique is not None and nbd_args == unique
    reference = unique if unique is not None else frozenset()
    missing = sorted(a.label for a in nbd_args - reference)
    extra = sorted(a.label for a in reference - nbd_args)

    lit_args, lit_mask = generate_stable_extension(inst, "literal")
    app_args, app_mask = generate_stable_extension(inst, "applicable")

    # direction 2: compare Th(support) with the stable extension's conclusions
    support = trace.support
    stable_concs = {a.conclusion for a in reference}
    only_pdl, only_arg = [], []
    for phi in inst.universe:
        in_e = sig.entails(support, phi)
        in_a = phi in stable_concs
        if in_e and not in_a:
            only_pdl.append(format_formula(phi))
        elif in_a and not in_e:
            only_arg.append(format_formula(phi))
    concs = list(stable_concs)
    supports_equivalent = (all(sig.entails(concs, f) for f in support)
                           and all(sig.entails(support, f) for f in concs))
    direction2 = unique is not None and not only_pdl and not only_arg and supports_equivalent

    return RepresentationReport(
        theory=theory, linearisation=lin,
        direction1=direction1, direction2=direction2,
        nbd_agree=nbd_c == nbd_x,
        stable_count=len(stables),
        algorithm_literal=unique is not None and frozenset(lit_args) == unique,
        algorithm_applicable=unique is not None and frozenset(app_args) == unique,
        grounded_equals_stable=unique is not None and ground == unique,
        supports_equivalent=supports_equivalent,
        extension_support=support,
        nbd=[d.id for d in nbd_x],
        accepted_literal=inst.names_of_mask(lit_mask),
        accepted_applicable=inst.names_of_mask(app_mask),
        missing_in_args=missing, extra_in_args=extra,
        only_in_pdl=only_pdl, only_in_arguments=only_arg,
        pool_size=len(inst.pool),
    )


def is_stable(af: AbstractFramework, members: frozenset) -> bool:
    if not is_conflict_free(af, members):
        return False
    idx = {af.index[m] for m in members}
    for i in range(len(af)):
        if i not in idx and not (af.attackers[i] & idx):
            return False
    return True
