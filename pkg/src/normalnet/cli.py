"""Command line interface for extraction, reconstruction, and checks.

Exit codes: 0 on success, 1 on a domain error (malformed or invalid input
content, a failed reconstruction, failed round trips), 2 on a usage error
(bad flags, missing files, out-of-scale or unsatisfiable requests).

All commands read and write plain text: networks as eNewick, caterpillar
sets as JSON, renders as DOT.  Results go to --out when given, else stdout;
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys

from .caterpillars import CaterpillarSets, extract_sets
from .enewick import ENewickParseError, parse_enewick, to_dot, write_enewick
from .generate import (
    GenSpec,
    UnsatisfiableSpecError,
    find_normal_rq_ambiguous_pair,
    find_treechild_rq_ambiguous_tuple,
    find_triple_ambiguous_pair,
    random_normal,
    random_temporal_normal,
)
from .network import (
    is_temporal,
    isomorphic,
    structural_cherries,
    structural_double_reticulated_cherries,
    structural_reticulated_cherries,
    validate,
)
from .reconstruct import (
    ReconstructionError,
    construct_normal,
    construct_temporal_normal,
)

_DEFAULT_MAX_RETS = 8


def _read_text(path):
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _write_text(path, text):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def _fail(message):
    print(f"error: {message}", file=sys.stderr)


def _fmt_bool(value):
    return "true" if value else "false"


def _fmt_tuples(items):
    return "[" + ",".join("(" + ",".join(item) + ")" for item in items) + "]"


def _default_seed():
    raw = os.environ.get("NORMALNET_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"NORMALNET_SEED must be an integer, got {raw!r}")


class UsageError(Exception):
    """Bad arguments detected after parsing; mapped to exit code 2."""


def cmd_extract(args):
    net = parse_enewick(_read_text(args.network))
    if net.n_reticulations > args.max_rets:
        raise UsageError(
            f"network has {net.n_reticulations} reticulations, above the "
            f"cap of {args.max_rets}; raise it with --max-rets"
        )
    sets = extract_sets(net)
    _write_text(args.out, sets.to_json() + "\n")
    if args.verify:
        rebuilt, _ = construct_normal(sets.leaves, sets.triples, sets.quads)
        if not isomorphic(net, rebuilt):
            _fail("reconstruction from the extracted sets is not "
                  "isomorphic to the input network")
            return 1
    return 0


def cmd_reconstruct(args):
    try:
        sets = CaterpillarSets.from_json(_read_text(args.sets))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"sets file is missing field {exc}") from exc
    build = construct_temporal_normal if args.temporal else construct_normal
    net, trace = build(sets.leaves, sets.triples, sets.quads)
    _write_text(args.out, write_enewick(net) + "\n")
    if args.trace:
        _write_text(args.trace, "\n".join(trace.lines()) + "\n")
    if args.verify and extract_sets(net) != sets:
        _fail("reconstructed network does not display the input sets")
        return 1
    return 0


def cmd_check(args):
    net = parse_enewick(_read_text(args.network))
    report = validate(net)
    print(f"binary={_fmt_bool(report.is_binary_network)}")
    print(f"tree_child={_fmt_bool(report.is_tree_child)}")
    print(f"normal={_fmt_bool(report.is_normal)}")
    print(f"temporal={_fmt_bool(is_temporal(net) is not None)}")
    print(f"cherries={_fmt_tuples(structural_cherries(net))}")
    print(
        "reticulated_cherries="
        f"{_fmt_tuples(structural_reticulated_cherries(net))}"
    )
    print(
        "double_reticulated_cherries="
        f"{_fmt_tuples(structural_double_reticulated_cherries(net))}"
    )
    for violation in report.violations:
        print(f"violation={violation}")
    return 0 if report.is_binary_network else 1


def cmd_roundtrip(args):
    if args.leaves < 1 or args.rets < 0 or args.trials < 1:
        raise UsageError("--leaves, --rets, and --trials must be positive")
    seed = args.seed if args.seed is not None else _default_seed()
    generate = random_temporal_normal if args.temporal else random_normal
    build = construct_temporal_normal if args.temporal else construct_normal
    failures = []
    for trial in range(args.trials):
        spec = GenSpec(args.leaves, args.rets, seed=seed + trial)
        net = generate(spec)
        sets = extract_sets(net)
        try:
            rebuilt, _ = build(sets.leaves, sets.triples, sets.quads)
        except ReconstructionError:
            failures.append(trial)
            continue
        if not isomorphic(net, rebuilt):
            failures.append(trial)
    print(f"pass={args.trials - len(failures)} fail={len(failures)}")
    for trial in failures:
        _fail(f"round trip failed for seed {seed + trial}")
    return 1 if failures else 0


def cmd_ambiguity(args):
    if args.leaves < 3:
        raise UsageError("--leaves must be at least 3")
    if args.mode == "triples":
        if args.cls != "normal":
            raise UsageError("--mode triples searches normal networks only")
        found = find_triple_ambiguous_pair(args.leaves)
    elif args.cls == "tree-child":
        if args.leaves != 3:
            raise UsageError(
                "the tree-child search is exhaustive and fixed at 3 leaves"
            )
        found = find_treechild_rq_ambiguous_tuple()
    else:
        found = find_normal_rq_ambiguous_pair(args.leaves)
    if found is None:
        print("none found")
        return 0
    nets = list(found)
    for net in nets:
        print(write_enewick(net))
    sets = [extract_sets(net) for net in nets]
    equal_r = all(s.triples == sets[0].triples for s in sets)
    equal_q = all(s.quads == sets[0].quads for s in sets)
    iso = any(
        isomorphic(first, second)
        for i, first in enumerate(nets)
        for second in nets[i + 1:]
    )
    print(
        f"equal_R={_fmt_bool(equal_r)} equal_Q={_fmt_bool(equal_q)} "
        f"isomorphic={_fmt_bool(iso)}"
    )
    return 0


def cmd_render(args):
    net = parse_enewick(_read_text(args.network))
    _write_text(args.out, to_dot(net))
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="normalnet",
        description=(
            "Reconstruct normal phylogenetic networks from their displayed "
            "three- and four-leaf caterpillars."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    extract = sub.add_parser(
        "extract", help="write the displayed triple and quad sets of a network"
    )
    extract.add_argument("--network", required=True, help="eNewick file")
    extract.add_argument("--out", help="sets JSON output path (default stdout)")
    extract.add_argument(
        "--max-rets",
        type=int,
        default=_DEFAULT_MAX_RETS,
        help="reticulation cap; extraction cost doubles per reticulation",
    )
    extract.add_argument(
        "--verify",
        action="store_true",
        help="also reconstruct from the sets and require isomorphism",
    )
    extract.set_defaults(func=cmd_extract)

    reconstruct = sub.add_parser(
        "reconstruct", help="rebuild the unique normal network from a sets file"
    )
    reconstruct.add_argument("--sets", required=True, help="sets JSON file")
    reconstruct.add_argument(
        "--temporal",
        action="store_true",
        help="use the cherry / double-reticulated-cherry reduction only",
    )
    reconstruct.add_argument("--out", help="eNewick output path (default stdout)")
    reconstruct.add_argument("--trace", help="write reduction steps to this path")
    reconstruct.add_argument(
        "--verify",
        action="store_true",
        help="re-extract from the result and require equal sets",
    )
    reconstruct.set_defaults(func=cmd_reconstruct)

    check = sub.add_parser(
        "check", help="report class predicates and cherry structure"
    )
    check.add_argument("--network", required=True, help="eNewick file")
    check.set_defaults(func=cmd_check)

    roundtrip = sub.add_parser(
        "roundtrip", help="generate networks and verify extract-reconstruct closure"
    )
    roundtrip.add_argument("--leaves", type=int, required=True)
    roundtrip.add_argument("--rets", type=int, required=True)
    roundtrip.add_argument("--trials", type=int, default=20)
    roundtrip.add_argument(
        "--seed", type=int, default=None, help="default NORMALNET_SEED or 0"
    )
    roundtrip.add_argument("--temporal", action="store_true")
    roundtrip.set_defaults(func=cmd_roundtrip)

    ambiguity = sub.add_parser(
        "ambiguity", help="search for distinct networks sharing displayed sets"
    )
    ambiguity.add_argument(
        "--mode", choices=("triples", "triples+quads"), required=True
    )
    ambiguity.add_argument("--leaves", type=int, default=5)
    ambiguity.add_argument(
        "--class",
        dest="cls",
        choices=("normal", "tree-child"),
        default="normal",
    )
    ambiguity.set_defaults(func=cmd_ambiguity)

    render = sub.add_parser("render", help="render a network to Graphviz DOT")
    render.add_argument("--network", required=True, help="eNewick file")
    render.add_argument("--format", choices=("dot",), default="dot")
    render.add_argument("--out", help="output path (default stdout)")
    render.set_defaults(func=cmd_render)

    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        _fail(str(exc))
        return 2
    except UnsatisfiableSpecError as exc:
        _fail(str(exc))
        return 2
    except OSError as exc:
        _fail(str(exc))
        return 2
    except (ReconstructionError, ValueError) as exc:
        _fail(str(exc))
        return 1


def entry():
    raise SystemExit(main(sys.argv[1:]))


if __name__ == "__main__":
    entry()
