"""Representation check over random linearised theories, once per
structure-preference reading.

    python3 scripts/run_fuzz.py --count 10000 --seeds 0 1 2
    python3 scripts/run_fuzz.py --atoms 5 --defaults 8 --max-facts 3 --count 500

Prints one row per (reading, seed) and the failing samples of each row.
Samples whose argument pool exceeds the size cap are counted as skipped and
left out of the other columns.
"""

import argparse
import sys
import time

from pdlarg.argumentation import SP_APPLICABILITY
from pdlarg.fuzz import FuzzConfig, check_corpus
from pdlarg.pdt_format import print_theory

COLUMNS = ("verified", "unique", "nbd", "literal", "applicable")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--atoms", type=int, default=4)
    ap.add_argument("--defaults", type=int, default=6)
    ap.add_argument("--max-facts", type=int, default=2)
    ap.add_argument("--count", type=int, default=2000)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0])
    ap.add_argument("--readings", nargs="+", choices=SP_APPLICABILITY, default=list(SP_APPLICABILITY))
    ap.add_argument("--show", action="store_true", help="print the first failing theory of each row")
    args = ap.parse_args()
    cfg = FuzzConfig(atoms=args.atoms, defaults=args.defaults, max_facts=args.max_facts)
    print(f"config: {cfg}")
    print(f"{'reading':<11}{'seed':>5}{'skipped':>9}  "
          + "  ".join(f"{c:>11}" for c in COLUMNS) + "    time")
    any_fail = False
    for reading in args.readings:
        for seed in args.seeds:
            start = time.perf_counter()
            t = check_corpus(seed, args.count, cfg, reading)
            cells = "  ".join(f"{getattr(t, c):>5}/{t.checked:<5}" for c in COLUMNS)
            print(f"{reading:<11}{seed:>5}{t.skipped:>9}  {cells}  {time.perf_counter() - start:6.1f}s")
            if t.skipped:
                print(f"  skipped samples: {', '.join(map(str, t.skipped_samples))}")
            if t.failures:
                any_fail = True
                print(f"  failing samples: {', '.join(str(k) for k, _, _ in t.failures)}")
                if args.show:
                    _, theory, r = t.failures[0]
                    print("    " + print_theory(theory).replace("\n", "\n    ").rstrip())
                    print("    " + r.summary().replace("\n", "\n    "))
            sys.stdout.flush()
    return 1 if any_fail else 0


if __name__ == "__main__":
    sys.exit(main())
