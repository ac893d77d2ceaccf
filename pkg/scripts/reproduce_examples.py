"""Run every worked example through the CLI and compare with the stored
golden outputs.

    python3 scripts/reproduce_examples.py            # compare
    python3 scripts/reproduce_examples.py --update   # rewrite golden files
"""

import argparse
import difflib
import io
import json
import sys
from pathlib import Path

from pdlarg.cli import main as pdt_main

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"
GOLDEN = FIXTURES / "golden"


def load_manifest() -> dict:
    return json.loads((GOLDEN / "manifest.json").read_text())


def run(argv: list[str]) -> tuple[int, str]:
    # fixture names are resolved relative to the fixtures directory
    argv = [str(FIXTURES / a) if a.endswith(".pdt") else a for a in argv]
    buf = io.StringIO()
    code = pdt_main(argv, out=buf)
    return code, f"exit {code}\n" + buf.getvalue()


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--update", action="store_true")
    ap.add_argument("names", nargs="*", help="subset of manifest entries")
    args = ap.parse_args()
    manifest = load_manifest()
    names = args.names or list(manifest)
    bad = 0
    for name in names:
        _, text = run(manifest[name])
        path = GOLDEN / f"{name}.txt"
        if args.update:
            path.write_text(text)
            print(f"wrote {path.relative_to(ROOT)}")
            continue
        want = path.read_text() if path.exists() else ""
        if text == want:
            print(f"PASS {name}")
        else:
            bad += 1
            print(f"FAIL {name}")
            sys.stdout.writelines(difflib.unified_diff(want.splitlines(True), text.splitlines(True),
                                                       "golden", "current"))
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
