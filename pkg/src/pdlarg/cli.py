"""Command-line entry point ``pdt``.

Exit codes: 0 success, 1 usage problem, 2 parse error, 3 inconsistent facts,
4 verification failure.
"""

from __future__ import annotations

import argparse
import itertools
import sys
import time
from pathlib import Path

from .argumentation import SP_APPLICABILITY, PoolTooLarge, instantiate
from .defaults import (InconsistentFacts, Linearisation, LinearisationError,
                       PrioritisedDefaultTheory, TheoryError,
                       compute_extension, enumerate_linearisations, generating_defaults,
                       non_blocked_defaults_constructive,
                       semi_active_defaults)
from .dung import (SEMANTICS, FrameworkTooLarge, compute_semantics, defeat_graph,
                   generate_stable_extension, sceptical_conclusions, verify_representation)
from .export import to_dot, to_json
from .fuzz import FuzzConfig, check_corpus
from .logic import FormulaSyntaxError, Not, format_formula
from .orders import (Kind, OrderError, SetComparison, check_reasonable_inducing,
                     check_reasonableness, check_toset_properties)
from .pdt_format import PdtError, TheoryDocument, load_theory, print_theory

EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_INCONSISTENT = 3
EXIT_VERIFY = 4

ORDER_NAMES = {
    "elitist": Kind.ELITIST_ORIGINAL,
    "strict-elitist": Kind.ELITIST_STRICT,
    "democratic": Kind.DEMOCRATIC,
    "disjoint": Kind.DISJOINT_ELITIST,
    "sp": Kind.STRUCTURE_PREFERENCE,
}


class UsageError(Exception):
    pass


def _fmt(f) -> str:
    return format_formula(f)


def _support(fs) -> str:
    return "Th({" + ", ".join(_fmt(f) for f in fs) + "})"


def _linearisations(doc: TheoryDocument, spec: str | None) -> list[Linearisation]:
    if spec:
        lin = Linearisation(tuple(x.strip() for x in spec.split(",") if x.strip()))
        lin.validate(doc.theory)
        return [lin]
    return enumerate_linearisations(doc.theory)


def _one_linearisation(doc: TheoryDocument, spec: str | None) -> Linearisation:
    lins = _linearisations(doc, spec)
    if len(lins) != 1:
        raise UsageError(f"priority admits {len(lins)} linearisations; choose one with --linearisation")
    return lins[0]


# --- subcommands --------------------------------------------------------------

def cmd_extension(args, out) -> int:
    doc = load_theory(args.file)
    for lin in _linearisations(doc, args.linearisation):
        trace = compute_extension(doc.theory, lin)
        print(f"linearisation: {lin}", file=out)
        for i, layer in enumerate(trace.layers):
            step = "facts" if layer.applied is None else f"apply {layer.applied.id}"
            print(f"  E{i}: {_support(layer.support)}  ({step})", file=out)
        print(f"extension: {_support(trace.support)}", file=out)
        gd = generating_defaults(trace)
        sad = semi_active_defaults(trace)
        nbd = non_blocked_defaults_constructive(trace)
        print(f"generating: {', '.join(d.id for d in gd) or '-'}", file=out)
        print(f"semi-active: {', '.join(d.id for d in sad) or '-'}", file=out)
        print(f"non-blocked: {', '.join(d.id for d in nbd) or '-'}", file=out)
        for q in doc.queries:
            print(f"query {_fmt(q)}: {'yes' if trace.entails(q) else 'no'}", file=out)
    return 0


def cmd_linearisations(args, out) -> int:
    doc = load_theory(args.file)
    for lin in enumerate_linearisations(doc.theory, cap=args.cap):
        print(lin, file=out)
    return 0


def _default_queries(doc: TheoryDocument):
    qs = []
    for d in doc.theory.defaults:
        qs += [d.consequent, Not(d.consequent)]
    return list(dict.fromkeys(qs))


def cmd_sceptical(args, out) -> int:
    doc = load_theory(args.file)
    queries = doc.queries or _default_queries(doc)
    traces = [compute_extension(doc.theory, lin) for lin in enumerate_linearisations(doc.theory)]
    print(f"extensions: {len(traces)}", file=out)
    for t in traces:
        print(f"  {t.linearisation}: {_support(t.support)}", file=out)
    for q in queries:
        verdicts = [t.entails(q) for t in traces]
        word = "sceptical" if all(verdicts) else ("credulous" if any(verdicts) else "no")
        print(f"{_fmt(q)}: {word}", file=out)
    return 0


def _semantics_lines(af, ids, semantics=SEMANTICS):
    results = {}
    for sem in semantics:
        try:
            results[sem] = compute_semantics(af, sem)
        except FrameworkTooLarge as e:
            results[sem] = e
    return results


def cmd_argue(args, out) -> int:
    doc = load_theory(args.file)
    kind = ORDER_NAMES[args.order]
    lin = _one_linearisation(doc, args.linearisation)
    inst = instantiate(doc.theory, lin, strict_rules=not args.no_strict_rules,
                       sp_applicability=args.sp_applicability)
    graph = defeat_graph(inst, kind)
    ids = {a: f"A{i}" for i, a in enumerate(graph.pool)}
    base = " < ".join(inst.order.base_names())
    print(f"order: {kind.value}", file=out)
    print(f"rules (least to most preferred): {base}", file=out)
    if kind is Kind.STRUCTURE_PREFERENCE:
        print(f"structure preference: {' < '.join(inst.order.sp_names())}", file=out)
    print(f"arguments ({len(graph.pool)}):", file=out)
    for a in graph.pool:
        rules = ",".join(sorted(inst.dr_names(a))) or "-"
        print(f"  {ids[a]}: {a.label}   rules {rules}", file=out)
    print(f"attacks ({len(graph.attacks)}):", file=out)
    for t in graph.attacks:
        print(f"  {ids[t.attacker]} -> {ids[t.target]} on {ids[t.target_sub]}", file=out)
    defeats = sorted(graph.defeats, key=lambda p: (int(ids[p[0]][1:]), int(ids[p[1]][1:])))
    print(f"defeats ({len(defeats)}):", file=out)
    for a, b in defeats:
        print(f"  {ids[a]} => {ids[b]}", file=out)
    results = _semantics_lines(graph.framework, ids)
    for sem, res in results.items():
        if isinstance(res, Exception):
            print(f"{sem}: not enumerated ({res})", file=out)
            continue
        print(f"{sem} extensions: {len(res)}", file=out)
        for e in res:
            members = sorted((ids[a] for a in e), key=lambda x: int(x[1:]))
            print("  {" + ", ".join(members) + "}", file=out)
    stable = results.get("stable")
    if not isinstance(stable, Exception) and stable is not None and len(stable):
        concs = sceptical_conclusions(stable)
        shown = sorted(_fmt(c) for c in concs)
        print("sceptical conclusions (stable): " + ", ".join(shown), file=out)
        sig = doc.theory.signature
        for q in doc.queries:
            held = all(sig.entails([a.conclusion for a in e], q) for e in stable)
            print(f"query {_fmt(q)}: {'sceptical' if held else 'not sceptical'}", file=out)
    if kind is Kind.STRUCTURE_PREFERENCE:
        _, mask = generate_stable_extension(inst, args.algorithm)
        names = ", ".join(inst.names_of_mask(mask)) or "-"
        print(f"greedy construction ({args.algorithm}) accepts: {names}", file=out)
    return 0


def cmd_verify(args, out) -> int:
    doc = load_theory(args.file)
    failed = 0
    for lin in _linearisations(doc, args.linearisation):
        r = verify_representation(doc.theory, lin, sp_applicability=args.sp_applicability)
        print(r.summary(), file=out)
        trace = compute_extension(doc.theory, lin)
        for q in doc.queries:
            print(f"query {_fmt(q)}: {'yes' if trace.entails(q) else 'no'}", file=out)
        bad = not r.ok or (args.strict_algorithm and not r.algorithm_literal)
        failed += bad
        print("", file=out)
    if doc.queries:
        lins = _linearisations(doc, args.linearisation)
        traces = [compute_extension(doc.theory, lin) for lin in lins]
        for q in doc.queries:
            if all(t.entails(q) for t in traces):
                print(f"sceptical: {_fmt(q)}", file=out)
    print("verified" if not failed else f"FAILED on {failed} linearisation(s)", file=out)
    return EXIT_VERIFY if failed else 0


def cmd_fuzz(args, out) -> int:
    cfg = FuzzConfig(atoms=args.atoms, defaults=args.defaults, max_facts=args.max_facts)
    start = time.perf_counter()

    def show(k, theory, r):
        if not r.ok or (args.show_algorithm_gaps and not r.algorithm_literal):
            print(f"--- sample {k}", file=out)
            print(print_theory(theory), end="", file=out)
            print(r.summary(), file=out)

    t = check_corpus(args.seed, args.count, cfg, args.sp_applicability, on_report=show)
    n = t.checked
    if t.skipped:
        print(f"skipped (size caps): {t.skipped}/{t.count}, samples "
              + ", ".join(map(str, t.skipped_samples)), file=out)
    print(f"{t.verified}/{n} verified", file=out)
    print(f"unique stable extension: {t.unique}/{n}", file=out)
    print(f"NBD definitions agree: {t.nbd}/{n}", file=out)
    print(f"greedy construction as written matches: {t.literal}/{n}", file=out)
    print(f"greedy construction over applicable rules matches: {t.applicable}/{n}", file=out)
    print(f"time: {time.perf_counter() - start:.2f}s", file=out)
    return 0 if t.all_verified else EXIT_VERIFY


def _preset_of(doc: TheoryDocument):
    if doc.preset is None:
        raise UsageError("fixture declares no preset (elements:/leq:/order:)")
    return doc.preset


def cmd_orders(args, out) -> int:
    doc = load_theory(args.fixture)
    if args.check == "reasonable-inducing":
        kind = Kind(args.kind or "elitist_original")
        cmp = SetComparison(kind, _preset_of(doc), check_total=False)
        rep = check_reasonable_inducing(cmp, universe_bound=args.bound, max_families=args.families)
        print(f"kind: {kind.value}", file=out)
        print(rep.summary(), file=out)
        return 0
    if args.check == "toset":
        kind = Kind(args.kind or "disjoint_elitist")
        cmp = SetComparison(kind, _preset_of(doc), check_total=False)
        rep = check_toset_properties(cmp)
        print(f"kind: {kind.value}", file=out)
        print(rep.summary(), file=out)
        return 0
    # reasonableness over the argument pool of each linearisation
    kind = Kind(args.kind or "structure_preference")
    theory = doc.theory
    runs = [(theory, lin) for lin in _linearisations(doc, args.linearisation)]
    if args.all_orders:
        runs = []
        for perm in itertools.permutations(theory.ids):
            chained = PrioritisedDefaultTheory(theory.defaults, theory.facts, list(zip(perm, perm[1:])),
                                               atoms=theory.signature.atoms,
                                               extra_formulas=theory.extra_formulas)
            runs.append((chained, Linearisation(perm)))
    for th, lin in runs:
        inst = instantiate(th, lin, sp_applicability=args.sp_applicability)
        pool = list(inst.pool)
        rep = check_reasonableness(lambda a, b: inst.strictly_less(kind, a, b), pool,
                                   inst.strict_extensions, max_size=args.max_size)
        print(f"linearisation: {lin} ({kind.value}, {len(pool)} arguments)", file=out)
        print(rep.summary(fmt=lambda a: a.label), file=out)
    return 0


def cmd_export(args, out) -> int:
    doc = load_theory(args.file)
    lin = _one_linearisation(doc, args.linearisation)
    inst = instantiate(doc.theory, lin, sp_applicability=args.sp_applicability)
    graph = defeat_graph(inst, ORDER_NAMES[args.order])
    text = to_dot(graph) if args.format == "dot" else to_json(graph)
    if args.out in (None, "-"):
        out.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out}", file=out)
    return 0


def cmd_print(args, out) -> int:
    out.write(print_theory(load_theory(args.file)))
    return 0


# --- parser -------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    """Usage errors exit with 1 so that 2 stays reserved for parse errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pdt", description="Prioritised default reasoning and argumentation.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("extension", help="trace the extension of each linearisation")
    s.add_argument("file")
    s.add_argument("--linearisation", help="comma-separated ids, least prioritised first")
    s.set_defaults(func=cmd_extension)

    s = sub.add_parser("linearisations", help="list linearisations of the priority")
    s.add_argument("file")
    s.add_argument("--cap", type=int, default=8)
    s.set_defaults(func=cmd_linearisations)

    s = sub.add_parser("sceptical", help="sceptical verdicts for the file's queries")
    s.add_argument("file")
    s.set_defaults(func=cmd_sceptical)

    s = sub.add_parser("argue", help="arguments, attacks, defeats and extensions")
    s.add_argument("file")
    s.add_argument("--order", choices=sorted(ORDER_NAMES), default="sp")
    s.add_argument("--linearisation")
    s.add_argument("--algorithm", choices=["literal", "applicable"], default="literal")
    s.add_argument("--no-strict-rules", action="store_true",
                   help="build arguments without strict steps")
    s.add_argument("--sp-applicability", choices=SP_APPLICABILITY, default="consistent",
                   help="when a rule counts as applicable in the structure preference")
    s.set_defaults(func=cmd_argue)

    s = sub.add_parser("verify", help="compare default logic with argumentation")
    s.add_argument("file")
    s.add_argument("--linearisation")
    s.add_argument("--strict-algorithm", action="store_true",
                   help="also fail when the single-pass greedy construction differs")
    s.add_argument("--sp-applicability", choices=SP_APPLICABILITY, default="consistent",
                   help="when a rule counts as applicable in the structure preference")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("fuzz", help="verify random linearised theories")
    s.add_argument("--atoms", type=int, default=4)
    s.add_argument("--defaults", type=int, default=6)
    s.add_argument("--max-facts", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--show-algorithm-gaps", action="store_true")
    s.add_argument("--sp-applicability", choices=SP_APPLICABILITY, default="consistent",
                   help="when a rule counts as applicable in the structure preference")
    s.set_defaults(func=cmd_fuzz)

    s = sub.add_parser("orders", help="order property checks")
    s.add_argument("check", choices=["check-reasonable-inducing", "check-toset", "check-reasonableness"])
    s.add_argument("fixture")
    s.add_argument("--kind", choices=[k.value for k in Kind])
    s.add_argument("--bound", type=int, default=5)
    s.add_argument("--families", type=int, default=3)
    s.add_argument("--max-size", type=int, default=3)
    s.add_argument("--linearisation")
    s.add_argument("--all-orders", action="store_true",
                   help="check every total order of the defaults")
    s.add_argument("--sp-applicability", choices=SP_APPLICABILITY, default="consistent",
                   help="when a rule counts as applicable in the structure preference")
    s.set_defaults(func=cmd_orders)

    s = sub.add_parser("export", help="write the defeat graph as DOT or JSON")
    s.add_argument("file")
    s.add_argument("--format", choices=["dot", "json"], default="json")
    s.add_argument("--out")
    s.add_argument("--order", choices=sorted(ORDER_NAMES), default="sp")
    s.add_argument("--linearisation")
    s.add_argument("--sp-applicability", choices=SP_APPLICABILITY, default="consistent",
                   help="when a rule counts as applicable in the structure preference")
    s.set_defaults(func=cmd_export)

    s = sub.add_parser("print", help="normalise a theory file")
    s.add_argument("file")
    s.set_defaults(func=cmd_print)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    if getattr(args, "check", None):
        args.check = args.check[len("check-"):]
    try:
        return args.func(args, out)
    except (PdtError, FormulaSyntaxError) as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except InconsistentFacts as e:
        print(f"inconsistent facts: {e}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (UsageError, LinearisationError, TheoryError, OrderError, FileNotFoundError,
            PoolTooLarge) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
