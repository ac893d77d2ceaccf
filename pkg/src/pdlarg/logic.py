"""Propositional language over a finite signature.

Formulas are immutable trees compared syntactically: ``!!a`` and ``a`` are
different formulas even though they are equivalent.  Entailment and
consistency are decided by truth tables encoded as integer bitmasks, one bit
per valuation of the signature.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

__all__ = [
    "Formula", "Atom", "Not", "And", "Or", "Implies", "Top", "Bottom",
    "TOP", "BOTTOM", "Signature", "UnknownAtom", "FormulaSyntaxError",
    "atoms_of", "negate", "contraries", "is_contrary", "entails",
    "consistent", "parse_formula", "format_formula", "nnf",
]


class UnknownAtom(ValueError):
    """An atom was used that the signature does not declare."""


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        super().__init__(message if position is None else f"{message} (column {position + 1})")
        self.position = position


class Formula:
    """Base class for formula nodes (frozen dataclasses)."""

    __slots__ = ()

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    name: str

    def __repr__(self):
        return f"Atom({self.name!r})"


@dataclass(frozen=True, repr=False)
class Not(Formula):
    sub: Formula

    def __repr__(self):
        return f"Not({self.sub!r})"


@dataclass(frozen=True, repr=False)
class And(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"And({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Or(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"Or({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Implies(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"Implies({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Top(Formula):
    def __repr__(self):
        return "TOP"


@dataclass(frozen=True, repr=False)
class Bottom(Formula):
    def __repr__(self):
        return "BOTTOM"


TOP = Top()
BOTTOM = Bottom()


def atoms_of(formula: Formula) -> frozenset[str]:
    out: set[str] = set()
    stack = [formula]
    while stack:
        f = stack.pop()
        if isinstance(f, Atom):
            out.add(f.name)
        elif isinstance(f, Not):
            stack.append(f.sub)
        elif isinstance(f, (And, Or, Implies)):
            stack.append(f.left)
            stack.append(f.right)
    return frozenset(out)


def negate(formula: Formula) -> Formula:
    return Not(formula)


def contraries(formula: Formula) -> frozenset[Formula]:
    """Syntactic contraries: ``!f`` always, and ``g`` when ``f`` is ``!g``."""
    if isinstance(formula, Not):
        return frozenset({Not(formula), formula.sub})
    return frozenset({Not(formula)})


def is_contrary(f: Formula, g: Formula) -> bool:
    return f == Not(g) or g == Not(f)


def nnf(formula: Formula) -> Formula:
    """Negation normal form.  Never applied implicitly."""
    if isinstance(formula, Not):
        s = formula.sub
        if isinstance(s, Not):
            return nnf(s.sub)
        if isinstance(s, And):
            return Or(nnf(Not(s.left)), nnf(Not(s.right)))
        if isinstance(s, Or):
            return And(nnf(Not(s.left)), nnf(Not(s.right)))
        if isinstance(s, Implies):
            return And(nnf(s.left), nnf(Not(s.right)))
        if isinstance(s, Top):
            return BOTTOM
        if isinstance(s, Bottom):
            return TOP
        return formula
    if isinstance(formula, And):
        return And(nnf(formula.left), nnf(formula.right))
    if isinstance(formula, Or):
        return Or(nnf(formula.left), nnf(formula.right))
    if isinstance(formula, Implies):
        return Or(nnf(Not(formula.left)), nnf(formula.right))
    return formula


class Signature:
    """A finite, ordered set of atoms with a truth-table cache.

    Bit ``v`` of a formula's mask is set iff the formula is true under
    valuation ``v``, where atom ``i`` is true in ``v`` iff bit ``i`` of ``v``
    is set.
    """

    def __init__(self, atoms: Iterable[str]):
        names = tuple(dict.fromkeys(atoms))
        for n in names:
            if not n or any(ch.isspace() for ch in n):
                raise ValueError(f"invalid atom name {n!r}")
        self.atoms = names
        self.index = {n: i for i, n in enumerate(names)}
        self.size = 1 << len(names)
        self.full = (1 << self.size) - 1
        self._atom_masks = [
            sum(1 << v for v in range(self.size) if (v >> i) & 1)
            for i in range(len(names))
        ]
        self._cache: dict[Formula, int] = {}

    def __repr__(self):
        return f"Signature({list(self.atoms)!r})"

    def __eq__(self, other):
        return isinstance(other, Signature) and self.atoms == other.atoms

    def __hash__(self):
        return hash(self.atoms)

    @classmethod
    def covering(cls, formulas: Iterable[Formula]) -> "Signature":
        names: set[str] = set()
        for f in formulas:
            names |= atoms_of(f)
        return cls(sorted(names))

    def check(self, formula: Formula) -> None:
        missing = atoms_of(formula) - self.index.keys()
        if missing:
            raise UnknownAtom(f"atom(s) {', '.join(sorted(missing))} not in signature")

    def mask(self, formula: Formula) -> int:
        m = self._cache.get(formula)
        if m is None:
            m = self._eval(formula)
            self._cache[formula] = m
        return m

    def _eval(self, f: Formula) -> int:
        if isinstance(f, Atom):
            i = self.index.get(f.name)
            if i is None:
                raise UnknownAtom(f"atom {f.name} not in signature")
            return self._atom_masks[i]
        if isinstance(f, Not):
            return self.full & ~self.mask(f.sub)
        if isinstance(f, And):
            return self.mask(f.left) & self.mask(f.right)
        if isinstance(f, Or):
            return self.mask(f.left) | self.mask(f.right)
        if isinstance(f, Implies):
            return (self.full & ~self.mask(f.left)) | self.mask(f.right)
        if isinstance(f, Top):
            return self.full
        if isinstance(f, Bottom):
            return 0
        raise TypeError(f"not a formula: {f!r}")

    def models(self, premises: Iterable[Formula]) -> int:
        m = self.full
        for p in premises:
            m &= self.mask(p)
        return m

    def entails(self, premises: Iterable[Formula], query: Formula) -> bool:
        return self.models(premises) & ~self.mask(query) == 0

    def consistent(self, premises: Iterable[Formula]) -> bool:
        return self.models(premises) != 0

    def consistently_entails(self, premises: Iterable[Formula], query: Formula) -> bool:
        """Some consistent subset of ``premises`` entails ``query``.

        Any consistent subset is contained in the set of premises true at one
        of its models, so it suffices to try those sets.
        """
        masks = [self.mask(p) for p in premises]
        q = self.mask(query)
        for v in range(self.size):
            acc = self.full
            for m in masks:
                if (m >> v) & 1:
                    acc &= m
            if acc & ~q == 0:
                return True
        return False


def _signature_for(premises, extra, signature):
    if signature is None:
        return Signature.covering(list(premises) + list(extra))
    return signature


def entails(premises: Iterable[Formula], query: Formula,
            signature: Signature | None = None) -> bool:
    """True iff every valuation satisfying all premises satisfies ``query``."""
    premises = list(premises)
    sig = _signature_for(premises, [query], signature)
    return sig.entails(premises, query)


def consistent(premises: Iterable[Formula], signature: Signature | None = None) -> bool:
    premises = list(premises)
    sig = _signature_for(premises, [], signature)
    return sig.consistent(premises)


# --- concrete syntax -------------------------------------------------------
#
# atoms: identifiers;  ! (or ~)  >  &  >  |  >  ->  (right associative)
# constants: true, false

_PREC = {Implies: 1, Or: 2, And: 3}
_OPS = {Implies: "->", Or: "|", And: "&"}


def format_formula(f: Formula, neg: str = "!") -> str:
    return _fmt(f, 0, neg)


def _fmt(f: Formula, ctx: int, neg: str = "!") -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Not):
        return neg + _fmt(f.sub, 4, neg)
    prec = _PREC[type(f)]
    if isinstance(f, Implies):
        # right associative
        text = f"{_fmt(f.left, prec + 1, neg)} -> {_fmt(f.right, prec, neg)}"
    else:
        text = f"{_fmt(f.left, prec, neg)} {_OPS[type(f)]} {_fmt(f.right, prec + 1, neg)}"
    return f"({text})" if prec < ctx else text


def _tokens(text: str) -> Iterator[tuple[str, str, int]]:
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif text.startswith("->", i):
            yield ("op", "->", i)
            i += 2
        elif ch in "!~&|()":
            yield ("op", "!" if ch == "~" else ch, i)
            i += 1
        elif ch.isalnum() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] in "_'."):
                j += 1
            yield ("name", text[i:j], i)
            i = j
        else:
            raise FormulaSyntaxError(f"unexpected character {ch!r}", i)
    yield ("end", "", n)


class _Parser:
    def __init__(self, text: str):
        self.toks = list(_tokens(text))
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def take(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect(self, value):
        kind, val, at = self.take()
        if val != value or kind == "end":
            raise FormulaSyntaxError(f"expected {value!r}", at)

    def parse(self) -> Formula:
        f = self.implication()
        kind, val, at = self.peek()
        if kind != "end":
            raise FormulaSyntaxError(f"unexpected {val!r}", at)
        return f

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek()[1] == "->":
            self.take()
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.peek()[1] == "|":
            self.take()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.peek()[1] == "&":
            self.take()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        kind, val, at = self.take()
        if val == "!" and kind == "op":
            return Not(self.unary())
        if val == "(" and kind == "op":
            f = self.implication()
            self.expect(")")
            return f
        if kind == "name":
            if val == "true":
                return TOP
            if val == "false":
                return BOTTOM
            return Atom(val)
        raise FormulaSyntaxError("expected a formula" if kind == "end" else f"unexpected {val!r}", at)


def parse_formula(text: str, signature: Signature | None = None) -> Formula:
    f = _Parser(text).parse()
    if signature is not None:
        signature.check(f)
    return f
