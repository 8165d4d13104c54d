"""Command-line surface.

Exit codes: 0 success, 1 I/O or parse error, 2 usage/config error,
3 check failed (a well-formed input that fails the requested predicate).

Machine output renders rationals as "a/b" (never decimals) and is
deterministic: no timestamps or timing unless explicitly requested.
"""

from __future__ import annotations

import argparse
import json
import sys

from treetrop import fileio
from treetrop.dissim import (
    DissimilarityMap,
    NonpositiveEdgeError,
    NotAdditiveError,
    RDissimilarityMap,
    four_point_check,
    pairwise_map,
    phi_r,
    reconstruct_tree,
    steiner_r_map,
)
from treetrop.newick import parse_newick, serialize_newick
from treetrop.plucker import (
    FAMILIES,
    THREE_TERM,
    classical_relation_check,
    dressian_report,
    generate_plucker_relations,
    pluecker_minors,
)
from treetrop.rationals import format_scalar
from treetrop.tlspace import (
    INTERPRETATIONS,
    PAIRWISE,
    circuit_membership,
    facet_scan,
    inequality_membership,
    internal_node_points,
)
from treetrop.tree import TreeError, random_tree
from treetrop.tropical import CONVENTIONS, MAX
from treetrop.verify import VerifyConfig, run_verify

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_CHECK_FAILED = 3


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(obj):
    _emit(json.dumps(obj, indent=2))


def _load_tree(path: str):
    return parse_newick(_read_text(path))


def _load_dmap(path: str) -> DissimilarityMap:
    n, r, values = fileio.read_vector(_read_text(path))
    if r != 2:
        raise fileio.FormatError(f"expected a pairwise map (r=2), file has r={r}")
    return DissimilarityMap(n, values)


# -- subcommands -----------------------------------------------------------------


def cmd_gen(args) -> int:
    tree = random_tree(
        args.n, args.seed, (args.wmin, args.wmax), max_denominator=args.max_den
    )
    _emit(serialize_newick(tree))
    return EXIT_OK


def cmd_dissim(args) -> int:
    tree = _load_tree(args.tree)
    if args.r == 2:
        d = pairwise_map(tree)
        _emit(fileio.write_vector(d.n, 2, d.values))
    else:
        dr = steiner_r_map(tree, args.r)
        _emit(fileio.write_vector(dr.n, dr.r, dr.values))
    return EXIT_OK


def cmd_phi(args) -> int:
    d = _load_dmap(args.map)
    dr = phi_r(d, args.r)
    _emit(fileio.write_vector(dr.n, dr.r, dr.values))
    return EXIT_OK


def cmd_fourpoint(args) -> int:
    d = _load_dmap(args.map)
    result = four_point_check(d)
    if args.format == "json":
        _emit_json(result.as_dict())
    elif result.passed:
        _emit("PASS")
    else:
        witness = ",".join(str(i) for i in result.witness)
        sums = ",".join(format_scalar(s) for s in result.sums)
        _emit(f"FAIL witness={witness} sums={sums}")
    return EXIT_OK if result.passed else EXIT_CHECK_FAILED


def cmd_reconstruct(args) -> int:
    d = _load_dmap(args.map)
    try:
        tree = reconstruct_tree(d)
    except NotAdditiveError as exc:
        witness = ",".join(str(i) for i in exc.witness)
        print(f"NOT_ADDITIVE witness={witness}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except NonpositiveEdgeError as exc:
        print(f"NONPOSITIVE_EDGE {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    _emit(serialize_newick(tree))
    return EXIT_OK


def cmd_minors(args) -> int:
    matrix = fileio.read_matrix(_read_text(args.matrix))
    minors = pluecker_minors(matrix)
    _emit(fileio.write_vector(matrix.ncols, matrix.nrows, minors))
    return EXIT_OK


def cmd_plucker_check(args) -> int:
    p = fileio.read_plucker(_read_text(args.vector))
    if args.classical:
        if p.has_infinite_entry:
            print("classical check needs finite entries", file=sys.stderr)
            return EXIT_ERROR
        relations = generate_plucker_relations(p.n, p.k, args.family)
        passes = [classical_relation_check(p.entries, rel) for rel in relations]
        failures = sum(1 for ok in passes if not ok)
        first = next(
            (rel for rel, ok in zip(relations, passes) if not ok), None
        )
        payload = {
            "n": p.n,
            "k": p.k,
            "family": args.family,
            "mode": "classical",
            "relations": len(relations),
            "failures": failures,
            "all_pass": failures == 0,
            "first_failure": None
            if first is None
            else {
                "i_seq": list(first.i_seq),
                "j_seq": list(first.j_seq),
                "exchange_indices": list(first.exchange_indices),
            },
        }
        all_pass = failures == 0
    else:
        report = dressian_report(p, args.family, args.convention)
        payload = report.as_dict()
        payload["mode"] = "tropical"
        all_pass = report.all_pass
    if args.format == "json":
        _emit_json(payload)
    else:
        line = (
            f"relations={payload['relations']} failures={payload['failures']} "
            f"result={'PASS' if all_pass else 'FAIL'}"
        )
        if payload["first_failure"] is not None:
            idx = ",".join(str(i) for i in payload["first_failure"]["exchange_indices"])
            line += f" witness={idx}"
        _emit(line)
    return EXIT_OK if all_pass else EXIT_CHECK_FAILED


def cmd_member(args) -> int:
    coords = fileio.read_point(_read_text(args.point))
    if args.dr:
        n, r, values = fileio.read_vector(_read_text(args.dr))
        dr = RDissimilarityMap(n, r, values)
        report = inequality_membership(coords, dr)
        payload = report.as_dict()
        verdict = report.verdict
        if args.format == "json":
            _emit_json(payload)
        elif verdict:
            tight = " ".join(
                ",".join(str(i) for i in s) for s in report.tight_sets
            )
            _emit(f"MEMBER min_slack={format_scalar(report.min_slack)} tight=[{tight}]")
        else:
            bad = ",".join(str(i) for i in report.first_violation)
            _emit(
                f"NOT_MEMBER min_slack={format_scalar(report.min_slack)} violated={bad}"
            )
    else:
        p = fileio.read_plucker(_read_text(args.plucker))
        report = circuit_membership(p, coords, args.convention)
        verdict = report.verdict
        if args.format == "json":
            _emit_json(report.as_dict())
        elif verdict:
            _emit("MEMBER")
        else:
            bad = ",".join(str(i) for i in report.first_violation)
            _emit(f"NOT_MEMBER violated={bad}")
    return EXIT_OK if verdict else EXIT_CHECK_FAILED


def cmd_points(args) -> int:
    tree = _load_tree(args.tree)
    points = internal_node_points(tree, args.r)
    if args.format == "json":
        _emit_json(
            [
                {
                    "vertex": str(pt.provenance[1]),
                    "coords": [format_scalar(c) for c in pt.coords],
                }
                for pt in points
            ]
        )
    else:
        for pt in points:
            coords = " ".join(format_scalar(c) for c in pt.coords)
            _emit(f"{pt.provenance[1]}: {coords}")
    return EXIT_OK


def cmd_facets(args) -> int:
    tree = _load_tree(args.tree)
    by_name = {str(v): v for v in tree.vertices}
    wanted = []
    for name in args.subtree.split(","):
        name = name.strip()
        if name not in by_name:
            raise TreeError(f"no vertex named {name!r} in the tree")
        wanted.append(by_name[name])
    tp = tree.subtree_of_vertices(wanted)
    scan = facet_scan(tree, tp, args.r, args.interpretation)
    if args.format == "json":
        _emit_json(scan.as_dict())
    else:
        coords = " ".join(format_scalar(c) for c in scan.point.coords)
        _emit(f"point {coords}")
        for rep in scan.reports:
            sub = ",".join(str(i) for i in rep.subset)
            _emit(
                f"subset={sub} slack={format_scalar(rep.slack)}"
                f" tight={'yes' if rep.actual_tight else 'no'}"
                f" predicted={'yes' if rep.predicted_tight else 'no'}"
                f" contains={'yes' if rep.contains_subtree else 'no'}"
                f" disjoint={'yes' if rep.interiors_disjoint else 'no'}"
            )
        _emit(f"on_facet {'yes' if scan.on_facet else 'no'}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        cfg = VerifyConfig(
            seed=args.seed,
            trials=args.trials,
            n_range=(args.n_min, args.n_max),
            r_set=tuple(int(r) for r in args.r.split(",")),
            conventions=tuple(args.convention.split(",")),
            weight_range=(args.wmin, args.wmax),
            max_denominator=args.max_den,
        )
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = run_verify(cfg)
    if args.format == "json":
        _emit(report.render_json(timing=args.timing))
    else:
        _emit(report.render_text(timing=args.timing))
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


# -- parser ------------------------------------------------------------------------


def _add_format(sub):
    sub.add_argument("--format", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treetrop",
        description="Exact tropical geometry of weighted trees.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("gen", help="generate a seeded random tree as Newick")
    p.add_argument("--n", type=int, required=True, help="leaf count (>= 3)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--wmin", default="1", help="least edge weight (rational)")
    p.add_argument("--wmax", default="10", help="greatest edge weight (rational)")
    p.add_argument("--max-den", type=int, default=4, dest="max_den")
    p.set_defaults(func=cmd_gen)

    p = subs.add_parser("dissim", help="pairwise or r-subset map of a tree")
    p.add_argument("tree", help="Newick file, or - for stdin")
    p.add_argument("--r", type=int, default=2)
    p.set_defaults(func=cmd_dissim)

    p = subs.add_parser("phi", help="r-subset map from a pairwise map via cyclic tours")
    p.add_argument("map", help="vector file with r=2, or - for stdin")
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_phi)

    p = subs.add_parser("fourpoint", help="four-point condition check")
    p.add_argument("map", help="vector file with r=2, or - for stdin")
    _add_format(p)
    p.set_defaults(func=cmd_fourpoint)

    p = subs.add_parser("reconstruct", help="rebuild the tree realizing a pairwise map")
    p.add_argument("map", help="vector file with r=2, or - for stdin")
    p.set_defaults(func=cmd_reconstruct)

    p = subs.add_parser("minors", help="maximal minors of an exact matrix")
    p.add_argument("matrix", help="matrix file, or - for stdin")
    p.set_defaults(func=cmd_minors)

    p = subs.add_parser("plucker-check", help="relation checks on a Pluecker vector")
    p.add_argument("vector", help="Pluecker vector file, or - for stdin")
    p.add_argument("--family", choices=FAMILIES, default=THREE_TERM)
    p.add_argument("--convention", choices=CONVENTIONS, default=MAX)
    p.add_argument(
        "--classical",
        action="store_true",
        help="check exact vanishing instead of the tropical condition",
    )
    _add_format(p)
    p.set_defaults(func=cmd_plucker_check)

    p = subs.add_parser("member", help="membership of a point")
    p.add_argument("point", help="point file, or - for stdin")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--dr", help="r-subset map file: inequality membership")
    group.add_argument("--plucker", help="Pluecker vector file: circuit membership")
    p.add_argument("--convention", choices=CONVENTIONS, default=MAX)
    _add_format(p)
    p.set_defaults(func=cmd_member)

    p = subs.add_parser("points", help="internal-vertex points of a tree")
    p.add_argument("tree", help="Newick file, or - for stdin")
    p.add_argument("--r", type=int, default=2)
    _add_format(p)
    p.set_defaults(func=cmd_points)

    p = subs.add_parser("facets", help="tightness scan for a subtree point")
    p.add_argument("tree", help="Newick file, or - for stdin")
    p.add_argument("--subtree", required=True, help="comma-separated internal vertex names")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--interpretation", choices=INTERPRETATIONS, default=PAIRWISE)
    _add_format(p)
    p.set_defaults(func=cmd_facets)

    p = subs.add_parser("verify", help="seeded batch verification of all properties")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--n-min", type=int, default=4, dest="n_min")
    p.add_argument("--n-max", type=int, default=7, dest="n_max")
    p.add_argument("--r", default="2,3", help="comma-separated subset sizes")
    p.add_argument(
        "--convention", default=MAX, help="comma-separated conventions (min,max)"
    )
    p.add_argument("--wmin", default="1")
    p.add_argument("--wmax", default="10")
    p.add_argument("--max-den", type=int, default=4, dest="max_den")
    p.add_argument("--timing", action="store_true", help="append elapsed seconds")
    _add_format(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (TreeError, fileio.FormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
