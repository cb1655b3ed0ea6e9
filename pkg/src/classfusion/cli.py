"""Command-line interface.

Subcommands: fuse (enumerate fusions, optionally pinned by facts),
identify (match ambient classes from order/chi/power constraints),
verify-models (check the permutation models against the table fixtures),
facts-diff (field-level comparison of two facts files).

Exit codes: 0 success/unique, 1 difference or resource failure,
2 validation failure, 3 residual ambiguity, 4 no match possible.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import facts as facts_mod
from . import fusion
from .chartab import CharacterTable, validate
from .cyclo import value_from_json
from .data import dump_json, load_table
from .groupcore import (
    build_projective,
    find_presentation_pair,
    match_classes,
    model_11sq_5x2a5,
    model_7sq_sl2_7,
    model_l2_11_sq_4,
    model_l2_19_2,
)


def _load_validated(name: str, verbose: bool) -> CharacterTable | None:
    try:
        table = load_table(name)
    except Exception as exc:
        print(f"error: cannot load table {name!r}: {exc}", file=sys.stderr)
        return None
    report = validate(table)
    if not report.ok:
        print(report, file=sys.stderr)
        return None
    if verbose:
        print(f"loaded {table.name}: {len(table)} classes, order {table.order}")
    return table


def _render_grouped(sub: CharacterTable, amb: CharacterTable, fmap) -> str:
    """Group subgroup classes sharing an element order and an image:
    '10fhln -> 10E'."""
    groups: dict[tuple[int, int], list[str]] = {}
    for c, x in enumerate(fmap.images):
        groups.setdefault((sub.classes[c].order, x), []).append(sub.class_name(c))
    lines = []
    for (order, x), labels in sorted(groups.items()):
        labels.sort()
        prefix = "".join(ch for ch in labels[0] if ch.isdigit())
        suffixes = [lab[len(prefix):] for lab in labels]
        if all(len(s) == 1 for s in suffixes) and all(
            lab.startswith(prefix) for lab in labels
        ):
            merged = prefix + "".join(sorted(suffixes))
        else:
            merged = ",".join(labels)
        lines.append(f"{merged} -> {amb.class_name(x)}")
    return "\n".join(lines)


def cmd_fuse(args) -> int:
    sub = _load_validated(args.sub, args.verbose)
    amb = _load_validated(args.amb, args.verbose)
    if sub is None or amb is None:
        return 2
    opts = fusion.SearchOptions(node_limit=args.node_limit)
    if args.irreducibles is not None:
        opts.prune_irreducibles = args.irreducibles
    try:
        result = fusion.search(sub, amb, opts=opts)
    except fusion.NoFusionPossible as exc:
        print(f"no fusion possible: {exc}", file=sys.stderr)
        return 4
    except fusion.SearchAborted as exc:
        print(f"search aborted: {exc} ({exc.stats})", file=sys.stderr)
        return 1
    print(f"candidate fusion maps: {len(result.maps)}")
    maps = result.maps
    if args.facts:
        try:
            all_facts = facts_mod.load_facts(args.facts)
            maps = facts_mod.apply_facts(maps, sub, amb, all_facts)
        except facts_mod.InconsistentFact as exc:
            print(f"facts contradict candidates: {exc}", file=sys.stderr)
            return 4
        print(f"after facts: {len(maps)}")
    if args.json:
        payload = {
            "sub": sub.name,
            "amb": amb.name,
            "maps": [list(m.images) for m in maps],
            "count": len(maps),
        }
        dump_json(payload, args.json)
    if not maps:
        print("no fusion maps survive", file=sys.stderr)
        return 4
    if len(maps) == 1:
        print(_render_grouped(sub, amb, maps[0]))
        return 0
    for i, m in enumerate(maps):
        print(f"--- map {i}")
        print(_render_grouped(sub, amb, m))
    return 3


def cmd_identify(args) -> int:
    amb = _load_validated(args.amb, args.verbose)
    if amb is None:
        return 2
    chi = None
    if args.chi is not None:
        try:
            chi = int(args.chi)
        except ValueError:
            chi = value_from_json(json.loads(args.chi))
    powers = []
    for spec_str in args.power or ():
        k, _, label = spec_str.partition(":")
        powers.append((int(k), label))
    fact = facts_mod.FusionFact(
        label="cli", order=args.order, chi=chi, powers=tuple(powers)
    )
    try:
        matches = facts_mod.identify_class(amb, fact)
    except facts_mod.InconsistentFact as exc:
        print(f"no class matches: {exc}", file=sys.stderr)
        return 4
    print(" ".join(amb.class_name(c) for c in matches))
    return 0


MODELS = {
    "l2_11_x_l2_11_4": (model_l2_11_sq_4, "(L2(11)xL2(11)):4", 1742400),
    "11sq_5x2a5": (model_11sq_5x2a5, "11^2:(5x2.A5)", 72600),
    "7sq_sl2_7": (model_7sq_sl2_7, "7^2:2psl(2,7)", 16464),
    "pgl2_19": (model_l2_19_2, "L2(19).2", 6840),
}
MODEL_ALIASES = {"l2_19_2": "pgl2_19"}

PGL19_RELATORS = ["a2", "b19", "(ab2)4", "(abab2)3"]
PSL11_RELATORS = ["a2", "b11", "(ba)3", "(b2ab6a)3"]


def cmd_verify_models(args) -> int:
    failures = 0
    wanted = [MODEL_ALIASES.get(args.only, args.only)] if args.only else list(MODELS)
    for key in wanted:
        if key not in MODELS:
            print(f"error: unknown model {key!r}; choose from {sorted(MODELS)}",
                  file=sys.stderr)
            return 2
        builder, table_name, expected_order = MODELS[key]
        table = _load_validated(table_name, args.verbose)
        if table is None:
            return 2
        model = builder()
        order = model.order
        ok_order = order == expected_order
        multiset = model.class_multiset()
        table_multiset = tuple(sorted((c.order, c.size) for c in table.classes))
        ok_classes = multiset == table_multiset
        print(f"[{key}] order {order} "
              f"({'ok' if ok_order else f'expected {expected_order}'}); "
              f"class multiset {'matches' if ok_classes else 'MISMATCH'} "
              f"vs {table.name}")
        if not (ok_order and ok_classes):
            failures += 1
        try:
            match_classes(model, table)
            print(f"[{key}] fingerprint matching against table: ok")
        except ValueError as exc:
            print(f"[{key}] fingerprint matching FAILED: {exc}")
            failures += 1
        if key == "pgl2_19":
            b = model.gens[0]
            a = find_presentation_pair(model, PGL19_RELATORS, 2, b)
            print(f"[{key}] presentation a2=b19=(ab2)4=(abab2)3: "
                  f"{'ok' if a is not None else 'NO GENERATING PAIR'}")
            if a is None:
                failures += 1
        if key == "7sq_sl2_7":
            n7 = sum(1 for c in model.conjugacy_classes() if c.order == 7)
            print(f"[{key}] classes of order 7: {n7} (expected 9)")
            if n7 != 9:
                failures += 1
    if (not args.only) or args.only == "l2_11_x_l2_11_4":
        psl = build_projective(11, False)
        a = find_presentation_pair(psl, PSL11_RELATORS, 2, psl.gens[0])
        print(f"[psl2_11] presentation a2=b11=(ba)3=(b2ab6a)3: "
              f"{'ok' if a is not None else 'NO GENERATING PAIR'}")
        if a is None:
            failures += 1
    if failures:
        print(f"{failures} check(s) failed", file=sys.stderr)
        return 1
    print("all model checks passed")
    return 0


def cmd_facts_diff(args) -> int:
    try:
        ref = facts_mod.load_facts(args.reference)
        oth = facts_mod.load_facts(args.other)
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    diffs = facts_mod.facts_diff(ref, oth)
    for line in diffs:
        print(line)
    if diffs:
        return 1
    print("facts files agree")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="classfusion",
        description="Determine and verify conjugacy class fusion from "
                    "subgroup character tables into an ambient group.",
    )
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    fuse = sub.add_parser("fuse", help="enumerate fusion maps, optionally "
                                       "pinned down by an element-facts file")
    fuse.add_argument("sub", help="subgroup table (bundled name or JSON path)")
    fuse.add_argument("amb", help="ambient table (bundled name or JSON path)")
    fuse.add_argument("--facts", help="facts JSON to filter the candidates")
    fuse.add_argument("--json", help="write the result JSON here")
    fuse.add_argument("--node-limit", type=int, default=None,
                      help="abort the search after this many nodes")
    fuse.add_argument("--irreducibles", type=int, default=None,
                      help="number of ambient irreducibles used for pruning")
    fuse.set_defaults(func=cmd_fuse)

    ident = sub.add_parser("identify", help="ambient classes matching an "
                                            "element's measured invariants")
    ident.add_argument("amb", nargs="?", default="M")
    ident.add_argument("--order", type=int, required=True)
    ident.add_argument("--chi", default=None,
                       help="distinguished character value (int or JSON)")
    ident.add_argument("--power", action="append", metavar="K:CLASS",
                       help="the element's K-th power lies in CLASS")
    ident.set_defaults(func=cmd_identify)

    vm = sub.add_parser("verify-models", help="enumerate the permutation "
                        "models and compare class data with the fixtures")
    vm.add_argument("--only", help=f"restrict to one model: {sorted(MODELS)}")
    vm.set_defaults(func=cmd_verify_models)

    fd = sub.add_parser("facts-diff", help="field-level diff of facts files")
    fd.add_argument("reference")
    fd.add_argument("other")
    fd.set_defaults(func=cmd_facts_diff)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
