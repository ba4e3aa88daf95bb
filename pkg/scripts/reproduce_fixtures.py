"""Run every CLI analysis over the bundled corpus and write the JSON reports.

Reports are canonical, so a second run into a fresh directory is
byte-identical; ``--check DIR`` compares against an earlier run instead of
writing.
"""
import argparse
import io
import sys
from importlib import resources
from pathlib import Path

from iosub.cli import run

COMMANDS = [
    ("validate", []),
    ("normalize", []),
    ("enumerate", ["--max-len", "8"]),
    ("parikh", []),
    ("linearity", []),
    ("growth", []),
    ("chains", ["--symbol", "a"]),
    ("copy-pattern", ["--symbol", "a"]),
]


def reports(corpus: Path):
    for path in sorted(corpus.glob("*.iod")):
        for cmd, extra in COMMANDS:
            out, err = io.StringIO(), io.StringIO()
            code = run(["--json", cmd, str(path), *extra], out, err)
            yield f"{path.stem}.{cmd}.json", code, out.getvalue()


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out", nargs="?", default="fixtures", help="output directory")
    ap.add_argument("--check", metavar="DIR", help="compare with reports in DIR instead of writing")
    ap.add_argument("--corpus", help="directory of .iod files (default: the bundled corpus)")
    args = ap.parse_args(argv)
    corpus = Path(args.corpus) if args.corpus else Path(str(resources.files("iosub") / "corpus"))

    out = Path(args.check or args.out)
    if not args.check:
        out.mkdir(parents=True, exist_ok=True)
    mismatches = 0
    codes = {}
    for name, code, text in reports(corpus):
        codes[code] = codes.get(code, 0) + 1
        target = out / name
        if args.check:
            if not target.exists() or target.read_text() != text:
                print(f"differs: {name}")
                mismatches += 1
        else:
            target.write_text(text)
    summary = ", ".join(f"exit {k}: {v}" for k, v in sorted(codes.items()))
    print(f"{sum(codes.values())} reports ({summary})" + (f", {mismatches} differ" if args.check else f" in {out}"))
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
