"""R1-R4 check of the structure-preference argument order over random
linearised theories.

    python3 scripts/scan_reasonableness.py --count 300
    python3 scripts/scan_reasonableness.py --atoms 4 --defaults 5 --max-size 3 --show 2

R4 is searched over every S of at most --max-size pool members, so "no
counterexample" is only a bounded result.  Pools larger than --max-pool are
skipped.
"""

import argparse
import sys

from pdlarg.argumentation import SP_APPLICABILITY, instantiate
from pdlarg.fuzz import FuzzConfig, fuzz_corpus
from pdlarg.orders import Kind, check_reasonableness
from pdlarg.pdt_format import print_theory


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--atoms", type=int, default=3)
    ap.add_argument("--defaults", type=int, default=4)
    ap.add_argument("--max-facts", type=int, default=2)
    ap.add_argument("--count", type=int, default=300)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-size", type=int, default=3)
    ap.add_argument("--max-pool", type=int, default=40)
    ap.add_argument("--readings", nargs="+", choices=SP_APPLICABILITY, default=["consistent", "active"])
    ap.add_argument("--show", type=int, default=0, help="print this many violating theories per reading")
    args = ap.parse_args()
    cfg = FuzzConfig(atoms=args.atoms, defaults=args.defaults, max_facts=args.max_facts)
    print(f"config: {cfg}, seed {args.seed}, |S| <= {args.max_size}")
    for reading in args.readings:
        checked = skipped = 0
        r13, r4 = [], []
        for k, (th, lin) in enumerate(fuzz_corpus(args.seed, args.count, cfg)):
            inst = instantiate(th, lin, sp_applicability=reading)
            if len(inst.pool) > args.max_pool:
                skipped += 1
                continue
            checked += 1
            rep = check_reasonableness(lambda a, b: inst.strictly_less(Kind.STRUCTURE_PREFERENCE, a, b),
                                       list(inst.pool), inst.strict_extensions, max_size=args.max_size)
            if not (rep.r1 and rep.r2 and rep.r3):
                r13.append(k)
            if rep.r4_counterexample_found:
                r4.append((k, th, rep))
        print(f"{reading}: {checked} pools checked, {skipped} skipped, "
              f"R1-R3 violated in {len(r13)}, R4 counterexample in {len(r4)}")
        for k, th, rep in r4[:args.show]:
            print(f"  sample {k}: witness " + ", ".join(a.label for a in rep.witnesses["r4"]))
            print("    " + print_theory(th).replace("\n", "\n    ").rstrip())
    return 0


if __name__ == "__main__":
    sys.exit(main())
