"""Bridge command line: emit the measured facts file, or run the
element-level construction checks."""

from __future__ import annotations

import argparse
import sys

from .emit import emit_facts
from .lemmas import CHECKS, run_lemma_checks
from .words import load_listings


def cmd_emit(args) -> int:
    summary = emit_facts(args.output, words_path=args.words,
                         progress=print if args.verbose else None)
    print(f"wrote {summary['facts']} facts to {args.output}")
    if summary["failed"]:
        for label, reason in summary["failed"]:
            print(f"uncomputed: {label}: {reason}", file=sys.stderr)
        return 1
    return 0


def cmd_lemmas(args) -> int:
    listings = load_listings(args.words)
    wanted = [args.only] if args.only else sorted(CHECKS)
    bad = 0
    for construction in wanted:
        report = run_lemma_checks(construction, listings)
        print(report)
        if not report.ok:
            bad += 1
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mmbridge",
        description="Recompute the class-fusion element facts on the real "
                    "Monster and re-run the construction checks.",
    )
    ap.add_argument("-v", "--verbose", action="store_true")
    ap.add_argument("--words", default=None,
                    help="path to the element-word listing file")
    sub = ap.add_subparsers(dest="command", required=True)

    emit = sub.add_parser("emit", help="measure all scripted elements and "
                                       "write the facts JSON")
    emit.add_argument("output")
    emit.set_defaults(func=cmd_emit)

    lemmas = sub.add_parser("lemmas", help="run the element-level checks "
                                           "behind each construction")
    lemmas.add_argument("--only", choices=sorted(CHECKS))
    lemmas.set_defaults(func=cmd_lemmas)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        import mmgroup  # noqa: F401  (availability probe)
    except ImportError:
        print("error: the mmgroup package is required for bridge "
              "computations (pip install mmgroup)", file=sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
