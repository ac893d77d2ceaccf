"""Line-oriented text format for theories and presets (``pdt/1``).

::

    pdt/1
    # comment
    atoms: a b c
    fact: a
    default d1: a : b          # antecedent : consequent
    priority: d1 < d2          # d2 is more prioritised
    chain: d1 < d2 < d3
    query: !c
    universe: a & b            # extra formula for the argument universe

Preset fixtures use ``elements: a b c``, ``leq: a <= b`` (one or more
comma-separated pairs), ``order: a < b < c`` (a strict total order) and
``preset-check: off`` to admit a relation that is not transitive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .defaults import NormalDefault, PrioritisedDefaultTheory, TheoryError
from .logic import Formula, FormulaSyntaxError, Signature, UnknownAtom, format_formula, parse_formula
from .orders import OrderError, Preset

__all__ = ["TheoryDocument", "PdtError", "parse_theory", "load_theory", "print_theory", "HEADER"]

HEADER = "pdt/1"


class PdtError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


@dataclass
class TheoryDocument:
    theory: PrioritisedDefaultTheory
    queries: list[Formula] = field(default_factory=list)
    atoms_declared: bool = True
    chains: list[list[str]] = field(default_factory=list)
    preset: Preset | None = None
    preset_elements: list[str] = field(default_factory=list)
    preset_pairs: list[tuple[str, str]] = field(default_factory=list)
    preset_check: bool = True


def _split_chain(text: str, sep: str, line: int) -> list[str]:
    parts = [p.strip() for p in text.split(sep)]
    if len(parts) < 2 or any(not p for p in parts):
        raise PdtError(f"expected ids separated by '{sep}'", line)
    return parts


def parse_theory(text: str) -> TheoryDocument:
    atoms: list[str] | None = None
    facts: list[Formula] = []
    defaults: list[NormalDefault] = []
    default_lines: dict[str, int] = {}
    priority: list[tuple[str, str, int]] = []
    chains: list[list[str]] = []
    queries: list[Formula] = []
    extras: list[Formula] = []
    elements: list[str] = []
    pairs: list[tuple[str, str]] = []
    preset_check = True
    seen_header = False
    sig: Signature | None = None

    def formula(src: str, line: int) -> Formula:
        try:
            f = parse_formula(src.strip())
        except FormulaSyntaxError as e:
            raise PdtError(f"bad formula {src.strip()!r}: {e}", line) from None
        if sig is None:
            raise PdtError("formula before the atoms declaration", line)
        try:
            sig.check(f)
        except UnknownAtom as e:
            raise PdtError(str(e), line) from None
        return f

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not seen_header:
            if line != HEADER:
                raise PdtError(f"expected header {HEADER!r}", lineno)
            seen_header = True
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise PdtError(f"expected 'keyword: ...', got {line!r}", lineno)
        key = key.strip()
        rest = rest.strip()
        if key == "atoms":
            if atoms is not None:
                raise PdtError("atoms declared twice", lineno)
            atoms = rest.split()
            if len(set(atoms)) != len(atoms):
                raise PdtError("duplicate atom", lineno)
            for a in atoms:
                if not (a[0].isalpha() or a[0] == "_") or a in ("true", "false") \
                        or not all(ch.isalnum() or ch in "_'." for ch in a):
                    raise PdtError(f"invalid atom name {a!r}", lineno)
            sig = Signature(atoms)
        elif key == "fact":
            facts.append(formula(rest, lineno))
        elif key.startswith("default"):
            did = key[len("default"):].strip()
            if not did or " " in did:
                raise PdtError("expected 'default <id>: <antecedent> : <consequent>'", lineno)
            ante, sep2, cons = rest.partition(":")
            if not sep2 or ":" in cons:
                raise PdtError("expected '<antecedent> : <consequent>'", lineno)
            if did in default_lines:
                raise PdtError(f"duplicate default id {did} (first on line {default_lines[did]})", lineno)
            d = NormalDefault(did, formula(ante, lineno), formula(cons, lineno))
            for other in defaults:
                if other == d:
                    raise PdtError(f"default {did} duplicates {other.id}", lineno)
            default_lines[did] = lineno
            defaults.append(d)
        elif key == "priority":
            ids = _split_chain(rest, "<", lineno)
            if len(ids) != 2:
                raise PdtError("priority takes one pair 'lo < hi'; use chain: for longer", lineno)
            priority.append((ids[0], ids[1], lineno))
        elif key == "chain":
            ids = _split_chain(rest, "<", lineno)
            chains.append(ids)
            for lo, hi in zip(ids, ids[1:]):
                priority.append((lo, hi, lineno))
        elif key == "query":
            queries.append(formula(rest, lineno))
        elif key == "universe":
            extras.append(formula(rest, lineno))
        elif key == "elements":
            elements = rest.split()
        elif key == "leq":
            for item in rest.split(","):
                parts = [p.strip() for p in item.split("<=")]
                if len(parts) != 2 or not all(parts):
                    raise PdtError("expected 'x <= y'", lineno)
                pairs.append((parts[0], parts[1]))
        elif key == "order":
            ids = _split_chain(rest, "<", lineno)
            if not elements:
                elements = list(ids)
            pairs.extend((a, b) for i, a in enumerate(ids) for b in ids[i + 1:])
        elif key == "preset-check":
            if rest not in ("on", "off"):
                raise PdtError("preset-check must be 'on' or 'off'", lineno)
            preset_check = rest == "on"
        else:
            raise PdtError(f"unknown keyword {key!r}", lineno)

    if not seen_header:
        raise PdtError(f"missing header {HEADER!r}", 1)
    for lo, hi, lineno in priority:
        for x in (lo, hi):
            if x not in default_lines:
                raise PdtError(f"priority mentions unknown default {x}", lineno)
        if lo == hi:
            raise PdtError(f"cyclic priority {lo} < {hi}", lineno)
    try:
        theory = PrioritisedDefaultTheory(defaults, facts, [(lo, hi) for lo, hi, _ in priority],
                                          atoms=atoms if atoms is not None else [],
                                          extra_formulas=extras)
    except TheoryError as e:
        line = priority[-1][2] if "cyclic" in str(e) and priority else None
        if "cyclic" in str(e):
            # report the first priority line that closes a cycle
            edges = []
            for lo, hi, ln in priority:
                edges.append((lo, hi))
                try:
                    PrioritisedDefaultTheory(defaults, [], edges, atoms=atoms or [])
                except TheoryError:
                    line = ln
                    break
        raise PdtError(str(e), line) from None
    preset = None
    if elements:
        try:
            preset = Preset(elements, pairs, validate=preset_check)
        except OrderError as e:
            raise PdtError(str(e)) from None
    return TheoryDocument(theory, queries, atoms is not None, chains, preset, elements, pairs, preset_check)


def load_theory(path: str | Path) -> TheoryDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise PdtError(f"not UTF-8: {e}") from None
    return parse_theory(text)


def _transitive_reduction(theory: PrioritisedDefaultTheory) -> list[tuple[str, str]]:
    pri = theory.priority
    ids = theory.ids
    out = []
    for lo, hi in sorted(pri, key=lambda p: (ids.index(p[0]), ids.index(p[1]))):
        if not any((lo, m) in pri and (m, hi) in pri for m in ids):
            out.append((lo, hi))
    return out


def print_theory(doc: TheoryDocument | PrioritisedDefaultTheory) -> str:
    """Render a theory; parsing the result gives back an equal theory."""
    if isinstance(doc, PrioritisedDefaultTheory):
        doc = TheoryDocument(doc)
    t = doc.theory
    lines = [HEADER, "atoms: " + " ".join(t.signature.atoms)]
    lines += [f"fact: {format_formula(f)}" for f in t.facts]
    lines += [f"default {d.id}: {format_formula(d.antecedent)} : {format_formula(d.consequent)}"
              for d in t.defaults]
    red = _transitive_reduction(t)
    if t.is_total() and len(t.defaults) > 1:
        order = sorted(t.ids, key=lambda i: sum(1 for lo, hi in t.priority if hi == i))
        lines.append("chain: " + " < ".join(order))
    else:
        lines += [f"priority: {lo} < {hi}" for lo, hi in red]
    lines += [f"universe: {format_formula(f)}" for f in t.extra_formulas]
    lines += [f"query: {format_formula(q)}" for q in doc.queries]
    if doc.preset_elements:
        lines.append("elements: " + " ".join(doc.preset_elements))
        if doc.preset_pairs:
            lines.append("leq: " + ", ".join(f"{a} <= {b}" for a, b in doc.preset_pairs))
        if not doc.preset_check:
            lines.append("preset-check: off")
    return "\n".join(lines) + "\n"
