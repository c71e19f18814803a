"""Command-line front end.

Exit codes: 0 when the checked property holds (or the command simply
succeeds), 1 when a property fails (the witness or violation is printed),
2 for usage and file-format errors. Results go to stdout, diagnostics to
stderr. Every randomized subcommand takes an explicit --seed, so identical
invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .chains import (
    NotCrossFreeError,
    check_conditions,
    extract_disjoint_chains,
    parse_chain_collection,
    parse_ordering,
    select_conditioned_chains,
    serialize_chain_collection,
    serialize_ordering,
    weak_reduce,
)
from .constructions import gen_cyclic_intervals, gen_laminar_max, gen_random_cross_free
from .crossing import dilworth_partition, find_pairwise_crossing_witness
from .families import (
    FamilyFormatError,
    classify_pair,
    format_set,
    parse_family,
    serialize_family,
)
from .search import (
    SearchInfeasibleError,
    bound_table,
    format_table_csv,
    format_table_text,
    max_cross_free,
)
from .tree import (
    ExtractionError,
    MalformedTreeError,
    build_tree,
    extract_k_crossing_from_tree,
    prune_root_children,
    tree_from_json,
    tree_to_json,
    validate_tree,
)

USAGE_ERROR = 2


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _parse_indices(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text or text == "-":
        return ()
    return tuple(int(t) for t in text.split(","))


def _parse_range(text: str) -> list[int]:
    """'3' -> [3]; '3..5' -> [3, 4, 5]."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _print_witness(witness) -> None:
    print(f"witness ({witness.mode} mode, {len(witness.sets)} sets):")
    for m in witness.sets:
        print(f"  {format_set(m)}")


def cmd_check(args) -> int:
    fam = parse_family(_read(args.family))
    witness = find_pairwise_crossing_witness(fam, args.k, args.mode)
    if args.format == "json":
        doc = {
            "k": args.k,
            "mode": args.mode,
            "size": len(fam),
            "cross_free": witness is None,
            "witness": None if witness is None else [format_set(m) for m in witness.sets],
        }
        print(json.dumps(doc, sort_keys=True))
    else:
        if witness is None:
            print(f"family of {len(fam)} sets is {args.k}-cross-free ({args.mode} mode)")
        else:
            print(f"family is NOT {args.k}-cross-free ({args.mode} mode)")
            _print_witness(witness)
    return 0 if witness is None else 1


def cmd_classify(args) -> int:
    fam = parse_family(_read(args.family))
    if len(fam) != 2:
        print(f"classify needs exactly 2 distinct sets, got {len(fam)}", file=sys.stderr)
        return USAGE_ERROR
    a, b = fam.sets
    rel = classify_pair(a, b, fam.ground)
    if args.format == "json":
        print(json.dumps({"a": format_set(a), "b": format_set(b), "relation": rel.value}, sort_keys=True))
    else:
        print(f"{format_set(a)} vs {format_set(b)}: {rel.value}")
    return 0


def cmd_decompose(args) -> int:
    fam = parse_family(_read(args.family))
    dec = dilworth_partition(fam)
    if args.format == "json":
        doc = {
            "chains": [[format_set(m) for m in chain] for chain in dec.chains],
            "max_antichain": [format_set(m) for m in dec.max_antichain],
        }
        print(json.dumps(doc, sort_keys=True))
    else:
        print(f"{len(dec.chains)} chains (max antichain size {len(dec.max_antichain)})")
        for i, chain in enumerate(dec.chains):
            print(f"chain {i}: " + " < ".join(format_set(m) for m in chain))
        print("antichain: " + "; ".join(format_set(m) for m in dec.max_antichain))
    return 0


def cmd_gen(args) -> int:
    if args.kind == "laminar":
        fam = gen_laminar_max(args.n)
    elif args.kind == "intervals":
        fam = gen_cyclic_intervals(args.n, args.include_trivial)
    else:
        fam = gen_random_cross_free(args.n, args.k, args.mode, args.seed)
    sys.stdout.write(serialize_family(fam))
    return 0


def cmd_reduce(args) -> int:
    fam = parse_family(_read(args.family))
    try:
        reduced = weak_reduce(fam, args.k)
    except NotCrossFreeError as exc:
        print(f"input family is not {args.k}-cross-free (strict mode)")
        _print_witness(exc.witness)
        return 1
    sys.stdout.write(serialize_family(reduced))
    return 0


def cmd_chains_extract(args) -> int:
    fam = parse_family(_read(args.family))
    cc = extract_disjoint_chains(fam, args.h)
    sys.stdout.write(serialize_chain_collection(cc))
    return 0


def cmd_chains_select(args) -> int:
    cc = parse_chain_collection(_read(args.chains))
    selected, ordering, _trace = select_conditioned_chains(
        cc, args.k, args.multiplier, args.seed
    )
    if args.format == "json":
        print(json.dumps({"selected": list(selected), "ordering": list(ordering.perm)}, sort_keys=True))
    else:
        print("selected " + (",".join(str(i) for i in selected) if selected else "-"))
        sys.stdout.write("ordering " + serialize_ordering(ordering))
    return 0


def cmd_chains_check(args) -> int:
    cc = parse_chain_collection(_read(args.chains))
    ordering = parse_ordering(_read(args.ordering), cc.ground.n)
    selected = _parse_indices(args.indices)
    report = check_conditions(cc, selected, ordering, args.k, args.multiplier)
    if args.format == "json":
        print(json.dumps(report.as_dict(), sort_keys=True))
    else:
        for name, sub in report.as_dict().items():
            status = "pass" if sub["passed"] else "FAIL"
            print(f"{name}: {status}")
            for v in sub["violations"]:
                print(f"  {v}")
    return 0 if report.all_pass else 1


def cmd_tree_validate(args) -> int:
    cc = parse_chain_collection(_read(args.chains))
    ordering = parse_ordering(_read(args.ordering), cc.ground.n)
    tree = tree_from_json(_read(args.tree))
    report = validate_tree(tree, cc, ordering)
    if args.format == "json":
        print(json.dumps(report.as_dict(), sort_keys=True))
    else:
        if report.malformed:
            print("malformed:")
            for m in report.malformed:
                print(f"  {m}")
        for axiom in report.AXIOMS:
            msgs = report.violations.get(axiom, ())
            print(f"{axiom}: {'pass' if not msgs else 'FAIL'}")
            for v in msgs:
                print(f"  {v}")
        for axiom in report.ADVISORY:
            msgs = report.advisory.get(axiom, ())
            print(f"{axiom} (advisory): {'pass' if not msgs else 'FAIL'}")
            for v in msgs:
                print(f"  {v}")
    return 0 if report.ok else 1


def cmd_tree_extract(args) -> int:
    cc = parse_chain_collection(_read(args.chains))
    ordering = parse_ordering(_read(args.ordering), cc.ground.n)
    tree = tree_from_json(_read(args.tree))
    try:
        witness = extract_k_crossing_from_tree(tree, cc, ordering, args.k)
    except ExtractionError as exc:
        print(f"extraction failed: {exc}")
        return 1
    _print_witness(witness)
    return 0


def cmd_tree_build(args) -> int:
    cc = parse_chain_collection(_read(args.chains))
    ordering = parse_ordering(_read(args.ordering), cc.ground.n)
    selected = _parse_indices(args.indices)
    result = build_tree(cc, selected, ordering, args.k, args.height, args.branching)
    if result.tree is None:
        print("no tree meets the branching target", file=sys.stderr)
        for i, reason in sorted(result.per_root.items()):
            print(f"root {i}: {reason}", file=sys.stderr)
        return 1
    sys.stdout.write(tree_to_json(result.tree))
    return 0


def cmd_tree_prune(args) -> int:
    tree = tree_from_json(_read(args.tree))
    keep = _parse_indices(args.keep)
    try:
        pruned = prune_root_children(tree, keep)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    sys.stdout.write(tree_to_json(pruned))
    return 0


def cmd_search(args) -> int:
    fam = parse_family(_read(args.family))
    result = max_cross_free(fam, args.k, args.mode)
    if args.format == "json":
        doc = {
            "k": args.k,
            "mode": args.mode,
            "size": result.size,
            "proven_optimal": result.proven_optimal,
            "best": [format_set(m) for m in result.best.sets],
        }
        print(json.dumps(doc, sort_keys=True))
    else:
        print(f"maximum {args.k}-cross-free subfamily size: {result.size} ({args.mode} mode)")
        for m in result.best.sets:
            print(f"  {format_set(m)}")
    return 0


def cmd_table(args) -> int:
    rows = bound_table(
        _parse_range(args.n), _parse_range(args.k), args.universe.split(","), args.mode
    )
    if args.format == "csv":
        sys.stdout.write(format_table_csv(rows))
    else:
        sys.stdout.write(format_table_text(rows))
    return 0


def _add_format(parser, choices=("text", "json")) -> None:
    parser.add_argument("--format", choices=choices, default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crossfree",
        description="Verification and search toolkit for k-cross-free set families.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="test a family file for k-cross-freeness")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=("strict", "weak"), default="strict")
    _add_format(p)
    p.add_argument("family")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", help="pair taxonomy for a 2-set family file")
    _add_format(p)
    p.add_argument("family")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("decompose", help="minimum chain partition with antichain certificate")
    _add_format(p)
    p.add_argument("family")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("gen", help="emit a generated family file")
    gen_sub = p.add_subparsers(dest="kind", required=True)
    g = gen_sub.add_parser("laminar", help="laminar family of size 2n")
    g.add_argument("--n", type=int, required=True)
    g.set_defaults(func=cmd_gen)
    g = gen_sub.add_parser("intervals", help="all proper cyclic intervals")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--include-trivial", action="store_true")
    g.set_defaults(func=cmd_gen)
    g = gen_sub.add_parser("random", help="randomized maximal k-cross-free family")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--mode", choices=("strict", "weak"), default="strict")
    g.add_argument("--seed", type=int, required=True)
    g.set_defaults(func=cmd_gen)

    p = sub.add_parser("reduce", help="weakly-cross-free half-size reduction")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("family")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("chains", help="chain extraction, selection, and condition checks")
    chains_sub = p.add_subparsers(dest="chains_command", required=True)
    c = chains_sub.add_parser("extract", help="greedy disjoint continuous chains")
    c.add_argument("--h", type=int, required=True)
    c.add_argument("family")
    c.set_defaults(func=cmd_chains_extract)
    c = chains_sub.add_parser("select", help="randomized C1-C4 chain selection")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--multiplier", type=int, default=3)
    c.add_argument("--seed", type=int, required=True)
    _add_format(c)
    c.add_argument("chains")
    c.set_defaults(func=cmd_chains_select)
    c = chains_sub.add_parser("check", help="verify conditions C1-C4")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--multiplier", type=int, default=3)
    c.add_argument("--indices", required=True, help="comma-separated selected chain indices")
    c.add_argument("--ordering", required=True, help="ordering file path")
    _add_format(c)
    c.add_argument("chains")
    c.set_defaults(func=cmd_chains_check)

    p = sub.add_parser("tree", help="cross-support tree operations")
    tree_sub = p.add_subparsers(dest="tree_command", required=True)
    t = tree_sub.add_parser("validate", help="axiom checks T1-T5 (T6-T8 advisory)")
    t.add_argument("--chains", required=True)
    t.add_argument("--ordering", required=True)
    _add_format(t)
    t.add_argument("tree")
    t.set_defaults(func=cmd_tree_validate)
    t = tree_sub.add_parser("extract", help="k pairwise weakly-crossing sets from a tree")
    t.add_argument("--chains", required=True)
    t.add_argument("--ordering", required=True)
    t.add_argument("--k", type=int, required=True)
    t.add_argument("tree")
    t.set_defaults(func=cmd_tree_extract)
    t = tree_sub.add_parser("build", help="inductive tree construction")
    t.add_argument("--chains", required=True)
    t.add_argument("--ordering", required=True)
    t.add_argument("--indices", required=True)
    t.add_argument("--k", type=int, required=True)
    t.add_argument("--height", type=int, required=True)
    t.add_argument("--branching", type=int, required=True)
    t.set_defaults(func=cmd_tree_build)
    t = tree_sub.add_parser("prune", help="keep a subset of root children")
    t.add_argument("--keep", required=True, help="comma-separated root child positions")
    t.add_argument("tree")
    t.set_defaults(func=cmd_tree_prune)

    p = sub.add_parser("search", help="exact maximum k-cross-free subfamily")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=("strict", "weak"), default="strict")
    p.add_argument("--threads", type=int, default=1, help="accepted for compatibility; search runs sequentially")
    _add_format(p)
    p.add_argument("family")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("table", help="exact values vs closed-form bounds")
    p.add_argument("--n", required=True, help="value or range, e.g. 3..5")
    p.add_argument("--k", required=True, help="value or range")
    p.add_argument("--universe", default="all", help="comma-separated subset of {all,intervals}")
    p.add_argument("--mode", choices=("strict", "weak"), default="strict")
    _add_format(p, choices=("text", "csv"))
    p.set_defaults(func=cmd_table)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FamilyFormatError, MalformedTreeError, SearchInfeasibleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
