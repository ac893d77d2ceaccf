"""Preorders, set comparisons lifted from them, and property checkers.

Subsets of a base are handled internally as bitmasks over the base's element
order; the public API takes and returns frozensets of element ids.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

__all__ = [
    "Preset", "OrderError", "Kind", "Outcome", "SetComparison", "compare",
    "InducingReport", "check_reasonable_inducing", "TosetReport",
    "check_toset_properties", "ReasonablenessReport", "check_reasonableness",
    "subsets_in_order",
]


class OrderError(ValueError):
    pass


class Preset:
    """A finite preset ``<P, <=>``; reflexive pairs are added implicitly.

    ``validate=False`` admits relations that are not transitive, which the
    checkers below can still explore (the elitist counterexample needs one).
    """

    def __init__(self, elements: Sequence[Hashable], leq: Iterable[tuple[Hashable, Hashable]] = (),
                 validate: bool = True):
        self.elements = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise OrderError("duplicate preset element")
        self.index = {e: i for i, e in enumerate(self.elements)}
        n = len(self.elements)
        self._le = [[i == j for j in range(n)] for i in range(n)]
        for a, b in leq:
            if a not in self.index or b not in self.index:
                raise OrderError(f"relation mentions unknown element {a if a not in self.index else b}")
            self._le[self.index[a]][self.index[b]] = True
        self.validated = validate
        if validate:
            bad = self.transitivity_failure()
            if bad is not None:
                a, b, c = bad
                raise OrderError(f"not transitive: {a} <= {b} <= {c} but not {a} <= {c}")
        self.le_mask = [sum(1 << j for j in range(n) if self._le[i][j]) for i in range(n)]
        self.lt_mask = [sum(1 << j for j in range(n) if self._le[i][j] and not self._le[j][i])
                        for i in range(n)]

    @classmethod
    def total(cls, elements: Sequence[Hashable]) -> "Preset":
        """Strict total order, ``elements`` listed from least to greatest."""
        elements = tuple(elements)
        return cls(elements, [(a, b) for i, a in enumerate(elements) for b in elements[i:]])

    def __repr__(self):
        pairs = [(a, b) for a in self.elements for b in self.elements if a != b and self.le(a, b)]
        return f"Preset({list(self.elements)!r}, {pairs!r})"

    def __len__(self):
        return len(self.elements)

    def le(self, a, b) -> bool:
        return self._le[self.index[a]][self.index[b]]

    def lt(self, a, b) -> bool:
        return self.le(a, b) and not self.le(b, a)

    def equiv(self, a, b) -> bool:
        return self.le(a, b) and self.le(b, a)

    def transitivity_failure(self):
        n = len(self.elements)
        for i, j, k in itertools.product(range(n), repeat=3):
            if self._le[i][j] and self._le[j][k] and not self._le[i][k]:
                return self.elements[i], self.elements[j], self.elements[k]
        return None

    def is_preorder(self) -> bool:
        return self.transitivity_failure() is None

    def is_strict_total(self) -> bool:
        n = len(self.elements)
        if not self.is_preorder():
            return False
        return all(self._le[i][j] != self._le[j][i] for i in range(n) for j in range(n) if i != j)

    def mask(self, subset: Iterable[Hashable]) -> int:
        m = 0
        for e in subset:
            try:
                m |= 1 << self.index[e]
            except KeyError:
                raise OrderError(f"element {e!r} is not in the base") from None
        return m

    def unmask(self, m: int) -> frozenset:
        return frozenset(e for i, e in enumerate(self.elements) if (m >> i) & 1)


class Kind(str, enum.Enum):
    ELITIST_ORIGINAL = "elitist_original"
    ELITIST_STRICT = "elitist_strict"
    DEMOCRATIC = "democratic"
    DISJOINT_ELITIST = "disjoint_elitist"
    STRUCTURE_PREFERENCE = "structure_preference"


class Outcome(str, enum.Enum):
    STRICTLY_LESS = "strictly_less"
    EQUAL = "equal"
    STRICTLY_GREATER = "strictly_greater"
    INCOMPARABLE = "incomparable"


_TOTAL_KINDS = (Kind.DISJOINT_ELITIST, Kind.STRUCTURE_PREFERENCE)


def _bits(m: int):
    i = 0
    while m:
        if m & 1:
            yield i
        m >>= 1
        i += 1


class SetComparison:
    """A lifting of a base preset to finite subsets.

    ``strict_less`` is the strict relation and ``weak`` its non-strict
    counterpart.  For the original elitist lifting ``weak`` is primary and
    the strict relation is its asymmetric part; for the others ``weak`` is
    "equal or strictly less".
    """

    def __init__(self, kind: Kind | str, base: Preset, check_total: bool = True):
        self.kind = Kind(kind)
        self.base = base
        if check_total and self.kind in _TOTAL_KINDS and not base.is_strict_total():
            raise OrderError(f"{self.kind.value} requires a strict total base order")
        self._lt_cache: dict[tuple[int, int], bool] = {}

    def __repr__(self):
        return f"SetComparison({self.kind.value}, {self.base!r})"

    # bitmask level

    def _elitist_le(self, g: int, h: int) -> bool:
        le = self.base.le_mask
        return any(h & ~le[x] == 0 for x in _bits(g))

    def weak_m(self, g: int, h: int) -> bool:
        if g == h:
            return True
        if self.kind is Kind.ELITIST_ORIGINAL:
            return self._elitist_le(g, h)
        return self.lt_m(g, h)

    def lt_m(self, g: int, h: int) -> bool:
        key = (g, h)
        hit = self._lt_cache.get(key)
        if hit is not None:
            return hit
        lt = self.base.lt_mask
        k = self.kind
        if k is Kind.ELITIST_ORIGINAL:
            res = g != h and self._elitist_le(g, h) and not self._elitist_le(h, g)
        elif k is Kind.ELITIST_STRICT:
            res = any(h & ~lt[x] == 0 for x in _bits(g))
        elif k is Kind.DEMOCRATIC:
            res = all(h & lt[x] for x in _bits(g))
        else:
            gd, hd = g & ~h, h & ~g
            res = any(hd & ~lt[x] == 0 for x in _bits(gd))
        self._lt_cache[key] = res
        return res

    # element level

    def strict_less(self, left: Iterable, right: Iterable) -> bool:
        return self.lt_m(self.base.mask(left), self.base.mask(right))

    def weak(self, left: Iterable, right: Iterable) -> bool:
        return self.weak_m(self.base.mask(left), self.base.mask(right))

    def compare(self, left: Iterable, right: Iterable) -> Outcome:
        g, h = self.base.mask(left), self.base.mask(right)
        if g == h:
            return Outcome.EQUAL
        lo, hi = self.lt_m(g, h), self.lt_m(h, g)
        if lo and not hi:
            return Outcome.STRICTLY_LESS
        if hi and not lo:
            return Outcome.STRICTLY_GREATER
        return Outcome.INCOMPARABLE


def compare(cmp: SetComparison, left: Iterable, right: Iterable) -> Outcome:
    return cmp.compare(left, right)


def subsets_in_order(n: int) -> list[int]:
    """Bitmasks of all subsets of ``range(n)`` in binary counting order.

    Element ``i`` is bit ``i``, so subsets are ordered by their largest
    element first (colexicographic order).
    """
    return list(range(1 << n))


@dataclass
class InducingReport:
    holds: bool
    transitive: bool
    property_2a: bool
    property_2b: bool
    witness: tuple[frozenset, ...] | None = None
    condition: str | None = None
    transitivity_witness: tuple[frozenset, frozenset, frozenset] | None = None

    def summary(self) -> str:
        def fmt(s):
            return "{" + ",".join(sorted(map(str, s))) + "}"
        lines = [f"reasonable inducing: {'yes' if self.holds else 'no'}",
                 f"  transitive: {self.transitive}",
                 f"  property 2(a): {self.property_2a}",
                 f"  property 2(b): {self.property_2b}"]
        if self.witness:
            g0, *rest = self.witness
            lines.append(f"  witness ({self.condition}): G0={fmt(g0)} "
                         + " ".join(f"G{i + 1}={fmt(g)}" for i, g in enumerate(rest)))
        if self.transitivity_witness:
            lines.append("  transitivity witness: " + " <= ".join(map(fmt, self.transitivity_witness)))
        return "\n".join(lines)


def check_reasonable_inducing(cmp: SetComparison, universe_bound: int = 5,
                              max_families: int = 3) -> InducingReport:
    """Exhaustive search for violations over all subsets of the base.

    Families ``G1..Gn`` are sets of distinct subsets with ``n <= max_families``.
    The reported witness is the first one in the order: G0 in binary
    counting order, then n, then the family in the same order.
    """
    n = len(cmp.base)
    if n > universe_bound:
        raise OrderError(f"base has {n} elements, bound is {universe_bound}")
    subsets = subsets_in_order(n)
    weak = {(g, h): cmp.weak_m(g, h) for g in subsets for h in subsets}
    strict = {(g, h): weak[g, h] and not weak[h, g] for g in subsets for h in subsets}

    trans_witness = None
    for g, h in itertools.product(subsets, repeat=2):
        if not weak[g, h]:
            continue
        for k in subsets:
            if weak[h, k] and not weak[g, k]:
                trans_witness = (g, h, k)
                break
        if trans_witness:
            break

    first = None
    failed = {"2a": False, "2b": False}
    for g0 in subsets:
        below = {u for u in subsets if strict[u, g0]}
        if not below:
            continue
        # 2(a) fails when no member is weakly below g0; 2(b) when g0 is weakly below all
        pools = {
            "2a": [g for g in subsets if not weak[g, g0]],
            "2b": [g for g in subsets if weak[g0, g]],
        }
        for size in range(1, max_families + 1):
            for cond in ("2a", "2b"):
                if failed[cond] and first is not None:
                    continue
                for fam in itertools.combinations(pools[cond], size):
                    u = 0
                    for g in fam:
                        u |= g
                    if u in below:
                        failed[cond] = True
                        cand = (g0, size, list(fam), cond, g0, fam)
                        if first is None or cand[:3] < first[:3]:
                            first = cand
                        break
    unmask = cmp.base.unmask
    report = InducingReport(
        holds=trans_witness is None and first is None,
        transitive=trans_witness is None,
        property_2a=not failed["2a"],
        property_2b=not failed["2b"],
    )
    if first is not None:
        report.witness = (unmask(first[4]),) + tuple(unmask(g) for g in first[5])
        report.condition = first[3]
    if trans_witness is not None:
        report.transitivity_witness = tuple(unmask(g) for g in trans_witness)
    return report


@dataclass
class TosetReport:
    irreflexive: bool
    transitive: bool
    trichotomy: bool
    empty_greatest: bool
    full_least: bool
    witnesses: dict[str, tuple[frozenset, ...]] = field(default_factory=dict)

    @property
    def all_true(self) -> bool:
        return (self.irreflexive and self.transitive and self.trichotomy
                and self.empty_greatest and self.full_least)

    def summary(self) -> str:
        lines = []
        for name in ("irreflexive", "transitive", "trichotomy", "empty_greatest", "full_least"):
            line = f"{name}: {getattr(self, name)}"
            if name in self.witnesses:
                line += "  witness: " + " ".join(
                    "{" + ",".join(sorted(map(str, s))) + "}" for s in self.witnesses[name])
            lines.append(line)
        return "\n".join(lines)


def check_toset_properties(cmp: SetComparison, max_size: int = 6) -> TosetReport:
    """Strict-toset properties of the strict relation over all subsets."""
    n = len(cmp.base)
    if n > max_size:
        raise OrderError(f"base has {n} elements, limit is {max_size}")
    subsets = subsets_in_order(n)
    lt = cmp.lt_m
    full = (1 << n) - 1
    unmask = cmp.base.unmask
    w: dict[str, tuple] = {}

    for g in subsets:
        if lt(g, g):
            w["irreflexive"] = (unmask(g),)
            break
    done = False
    for g in subsets:
        for h in subsets:
            if not lt(g, h):
                continue
            for k in subsets:
                if lt(h, k) and not lt(g, k):
                    w["transitive"] = (unmask(g), unmask(h), unmask(k))
                    done = True
                    break
            if done:
                break
        if done:
            break
    for g, h in itertools.combinations(subsets, 2):
        if lt(g, h) == lt(h, g):
            w["trichotomy"] = (unmask(g), unmask(h))
            break
    for g in subsets:
        if g and not lt(g, 0):
            w["empty_greatest"] = (unmask(g),)
            break
    for g in subsets:
        if g != full and not lt(full, g):
            w["full_least"] = (unmask(g),)
            break
    return TosetReport(
        irreflexive="irreflexive" not in w,
        transitive="transitive" not in w,
        trichotomy="trichotomy" not in w,
        empty_greatest="empty_greatest" not in w,
        full_least="full_least" not in w,
        witnesses=w,
    )


# --- reasonableness of argument preferences ---------------------------------

@dataclass
class ReasonablenessReport:
    r1: bool
    r2: bool
    r3: bool
    r4_counterexample_found: bool
    r4_max_size: int
    witnesses: dict[str, tuple] = field(default_factory=dict)

    @property
    def r4(self) -> bool:
        """No R4 violation found within the searched sizes (not a proof)."""
        return not self.r4_counterexample_found

    def summary(self, fmt=str) -> str:
        def show(key):
            if key not in self.witnesses:
                return ""
            return "  witness: " + ", ".join(
                fmt(x) if not isinstance(x, (tuple, list, frozenset, set))
                else "{" + ", ".join(fmt(y) for y in x) + "}" for x in self.witnesses[key])
        r4 = ("no counterexample found" if self.r4
              else "counterexample found")
        return "\n".join([
            f"R1: {self.r1}{show('r1')}",
            f"R2: {self.r2}{show('r2')}",
            f"R3: {self.r3}{show('r3')}",
            f"R4 (|S| <= {self.r4_max_size}): {r4}{show('r4')}",
        ])


def check_reasonableness(preference: Callable[[object, object], bool], pool: Sequence,
                         strict_extension_oracle: Callable[[Sequence], Iterable],
                         max_size: int = 3) -> ReasonablenessReport:
    """Check R1-R4 for ``preference(A, B)`` meaning "A strictly less preferred".

    Pool members must expose ``is_strict``, ``is_firm`` and ``subarguments``.
    R1 is read as: a strict and firm argument is strictly preferred to every
    argument that is not both strict and firm.  R4 is searched over all
    nonempty ``S`` of at most ``max_size`` pool members, so a negative result
    means only that no counterexample exists at that size.
    """
    pool = list(pool)
    members = set(pool)
    for a in pool:
        for s in a.subarguments:
            if s not in members:
                raise OrderError("argument pool is not subargument-closed")
    w: dict[str, tuple] = {}
    strict_firm = [a for a in pool if a.is_strict and a.is_firm]
    for a in strict_firm:
        for b in pool:
            if not (b.is_strict and b.is_firm) and not preference(b, a):
                w.setdefault("r1", (a, b))
            if preference(a, b):
                w.setdefault("r2", (a, b))
    for a in pool:
        for ap in strict_extension_oracle([a]):
            for b in pool:
                if not preference(a, b) and preference(ap, b):
                    w.setdefault("r3", (a, ap, b))
                if not preference(b, a) and preference(b, ap):
                    w.setdefault("r3", (a, ap, b))
            if "r3" in w:
                break
        if "r3" in w:
            break

    ext_cache: dict[frozenset, list] = {}

    def stext(rest: tuple) -> list:
        key = frozenset(rest)
        hit = ext_cache.get(key)
        if hit is None:
            hit = list(strict_extension_oracle(list(rest)))
            ext_cache[key] = hit
        return hit

    found = None
    for size in range(1, max_size + 1):
        for s in itertools.combinations(pool, size):
            if all(any(preference(b, a) for b in stext(s[:i] + s[i + 1:]))
                   for i, a in enumerate(s)):
                found = s
                break
        if found:
            break
    if found:
        w["r4"] = tuple(found)
    return ReasonablenessReport(
        r1="r1" not in w, r2="r2" not in w, r3="r3" not in w,
        r4_counterexample_found=found is not None, r4_max_size=max_size, witnesses=w)
