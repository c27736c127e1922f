"""Command line interface with deterministic, hash-stamped reports."""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction

from . import __version__
from .codim1 import codim1_table, large_codim1_sizes, support_size_bound
from .cube import LinearMap, evaluate_pattern, oracle_enumerate
from .search import (
    EXHAUSTIVE_LARGE,
    MINIMAL_LARGE,
    NON_REDUNDANT_SMALL,
    SearchConfig,
    bfs_search,
    exhaustive_large_config,
    large_search_config,
    small_search_config,
)
from .shapes import Shape, canonical_form, classify_star, max_intersection, shape_fraction
from .theorems import (
    antichain_bound_check,
    expected_h_n_window,
    h_n_window,
    ints_window_check,
    verify_large_sets,
    verify_small_window,
)

USAGE_ERROR = 2
VERIFY_FAILURE = 1


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _emit(payload: dict, args, fmt: str = "json") -> None:
    body = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    digest = hashlib.sha256(body.encode()).hexdigest()
    envelope = {
        "tool": "cubeint",
        "version": __version__,
        "config": {
            k: v
            for k, v in sorted(vars(args).items())
            if k not in {"func", "out"} and v is not None
        },
        "content_hash": digest,
        "result": payload,
    }
    text = json.dumps(_stringify(envelope), sort_keys=True, indent=2) + "\n"
    _write(text, args)


def _stringify(value):
    if isinstance(value, dict):
        return {str(k): _stringify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_stringify(v) for v in value]
    if isinstance(value, Fraction):
        return str(value)
    return value


def _write(text: str, args) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _emit_tsv(rows, header: str, args, meta: dict) -> None:
    body = header + "\n" + "".join(
        "\t".join(str(v) for v in row) + "\n" for row in rows
    )
    digest = hashlib.sha256(body.encode()).hexdigest()
    lines = [f"# tool=cubeint version={__version__} hash={digest}"]
    for key in sorted(meta):
        lines.append(f"# {key}={meta[key]}")
    _write("\n".join(lines) + "\n" + body, args)


def _cmd_sizes(args) -> int:
    if args.table == "codim1":
        rows = codim1_table()
        if args.format == "tsv":
            _emit_tsv(rows, "a\tb\tt", args, {"table": "codim1"})
        else:
            _emit({"table": [list(r) for r in rows]}, args)
        return 0
    sizes = large_codim1_sizes(args.k)
    _emit(sizes.to_json_dict(), args)
    return 0


def _cmd_search(args) -> int:
    mode = {
        "large": MINIMAL_LARGE,
        "small": NON_REDUNDANT_SMALL,
        "exhaustive-large": EXHAUSTIVE_LARGE,
    }[args.mode]
    builder = {
        MINIMAL_LARGE: large_search_config,
        NON_REDUNDANT_SMALL: small_search_config,
        EXHAUSTIVE_LARGE: exhaustive_large_config,
    }[mode]
    config = builder(
        args.k,
        max_edges=args.max_edges,
        dedupe_isomorphic=not args.no_dedupe,
    )
    if args.threshold is not None and args.threshold != config.threshold:
        config = SearchConfig(
            mode=config.mode,
            threshold=args.threshold,
            max_edge_size=min(support_size_bound(args.threshold), args.k),
            max_edges=config.max_edges,
            max_vertices=config.max_vertices,
            dedupe_isomorphic=config.dedupe_isomorphic,
        )
    result = bfs_search(config)
    depths = []
    for depth_index, records in enumerate(result.depths, start=1):
        shapes = []
        for rec in records:
            entry = {
                "shape": rec.shape.to_json_dict(),
                "max": rec.max_size,
                "fraction": str(rec.fraction),
                "raw_multiplicity": rec.raw_count(),
            }
            shapes.append(entry)
        depths.append({"edges": depth_index, "shapes": shapes})
    payload = {
        "config": {
            "mode": config.mode,
            "threshold": str(config.threshold),
            "max_edge_size": config.max_edge_size,
            "max_edges": config.max_edges,
            "max_vertices": config.max_vertices,
            "dedupe_isomorphic": config.dedupe_isomorphic,
        },
        "depths": depths,
        "pruned": result.pruned_count,
        "terminated_naturally": result.terminated_naturally,
    }
    _emit(payload, args)
    return 0


def _cmd_verify(args) -> int:
    if args.what == "large":
        report = verify_large_sets(args.k, args.n_max)
    elif args.what == "small":
        report = verify_small_window(args.k)
    elif args.what == "antichain":
        report = antichain_bound_check(args.ell, args.trials, args.seed)
    else:
        report = ints_window_check(args.k, seed=args.seed)
    _emit(report.to_json_dict(), args)
    return 0 if report.passed else VERIFY_FAILURE


def _cmd_window(args) -> int:
    sizes, witnesses = h_n_window(args.n)
    expected = expected_h_n_window(args.n)
    payload = {
        "n": args.n,
        "sizes": list(sizes.sizes),
        "expected": list(expected),
        "witnesses": {str(s): m.to_json_dict() for s, m in witnesses.items()},
        "match": list(sizes.sizes) == list(expected),
    }
    _emit(payload, args)
    return 0 if payload["match"] else VERIFY_FAILURE


def _cmd_oracle(args) -> int:
    entries = [Fraction(v) for v in args.entries.split(",")]
    sizes = oracle_enumerate(args.k, args.m, entries, keep_above=args.keep_above)
    _emit(sizes.to_json_dict(), args)
    return 0


def _cmd_shape(args) -> int:
    if args.json:
        shape = Shape.from_json_dict(json.loads(args.json))
    else:
        edges = [
            [int(v) for v in part.split(",") if v]
            for part in args.edges.split(";")
            if part
        ]
        shape = Shape.from_edges(edges)
    canon = canonical_form(shape)
    best, witness = max_intersection(canon)
    payload = {
        "shape": shape.to_json_dict(),
        "canonical": canon.to_json_dict(),
        "classification": classify_star(canon),
        "max": best,
        "fraction": str(shape_fraction(canon)),
        "witness": [list(row) for row in witness.signs] if witness else None,
    }
    _emit(payload, args)
    return 0


def _cmd_map(args) -> int:
    linear_map = LinearMap.from_json_dict(json.loads(args.json))
    pattern, size = evaluate_pattern(linear_map)
    payload = {
        "map": linear_map.to_json_dict(),
        "size": size,
        "pattern_hex": pattern.to_hex(),
    }
    _emit(payload, args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubeint",
        description="Exact hypercube/subspace intersection-size toolkit",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for randomised checks")
    sub = parser.add_subparsers(dest="verb", required=True)

    p_sizes = sub.add_parser("sizes", help="closed-form size tables")
    sizes_sub = p_sizes.add_subparsers(dest="table", required=True)
    p_codim1 = sizes_sub.add_parser("codim1", help="single-condition (a,b,t) table")
    p_codim1.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p_codim1.add_argument("--out")
    p_codim1.set_defaults(func=_cmd_sizes)
    p_large = sizes_sub.add_parser("large", help="above-half single-condition sizes")
    p_large.add_argument("--k", type=int, required=True)
    p_large.add_argument("--out")
    p_large.set_defaults(func=_cmd_sizes)

    p_search = sub.add_parser("search", help="breadth-first shape search")
    p_search.add_argument(
        "--mode", choices=("large", "small", "exhaustive-large"), required=True
    )
    p_search.add_argument("--k", type=int, required=True)
    p_search.add_argument("--threshold", type=_fraction, default=None)
    p_search.add_argument("--max-edges", type=int, default=None)
    p_search.add_argument("--no-dedupe", action="store_true")
    p_search.add_argument("--out")
    p_search.set_defaults(func=_cmd_search)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    verify_sub = p_verify.add_subparsers(dest="what", required=True)
    v_large = verify_sub.add_parser("large")
    v_large.add_argument("--k", type=int, required=True, choices=(6, 7, 8))
    v_large.add_argument("--n-max", type=int, default=None)
    v_large.add_argument("--out")
    v_large.set_defaults(func=_cmd_verify)
    v_small = verify_sub.add_parser("small")
    v_small.add_argument("--k", type=int, default=8, choices=(8, 9))
    v_small.add_argument("--out")
    v_small.set_defaults(func=_cmd_verify)
    v_anti = verify_sub.add_parser("antichain")
    v_anti.add_argument("--ell", type=int, required=True)
    v_anti.add_argument("--trials", type=int, default=1000)
    v_anti.add_argument("--seed", type=int, default=0)
    v_anti.add_argument("--out")
    v_anti.set_defaults(func=_cmd_verify)
    v_ints = verify_sub.add_parser("ints")
    v_ints.add_argument("--k", type=int, required=True, choices=(1, 2, 3, 4, 5))
    v_ints.add_argument("--seed", type=int, default=0)
    v_ints.add_argument("--out")
    v_ints.set_defaults(func=_cmd_verify)

    p_window = sub.add_parser("window", help="whole-cube top-quarter window")
    window_sub = p_window.add_subparsers(dest="which", required=True)
    w_hn = window_sub.add_parser("hn")
    w_hn.add_argument("--n", type=int, required=True)
    w_hn.add_argument("--out")
    w_hn.set_defaults(func=_cmd_window)

    p_oracle = sub.add_parser("oracle", help="brute-force size enumeration")
    p_oracle.add_argument("--k", type=int, required=True)
    p_oracle.add_argument("--m", type=int, required=True)
    p_oracle.add_argument("--entries", default="-1,0,1")
    p_oracle.add_argument("--keep-above", type=_fraction, default=Fraction(0))
    p_oracle.add_argument("--out")
    p_oracle.set_defaults(func=_cmd_oracle)

    p_shape = sub.add_parser("shape", help="inspect one shape")
    p_shape.add_argument("--edges", help='edges as "1,2;1,3"')
    p_shape.add_argument("--json", help="shape as JSON")
    p_shape.add_argument("--out")
    p_shape.set_defaults(func=_cmd_shape)

    p_map = sub.add_parser("map", help="evaluate one map")
    p_map.add_argument("--json", required=True)
    p_map.add_argument("--out")
    p_map.set_defaults(func=_cmd_map)

    return parser


def parse_command(argv: list[str]) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verb == "window" and args.n < 8:
        parser.error("window formula needs n >= 8")
    if args.verb == "shape" and not (args.edges or args.json):
        parser.error("shape needs --edges or --json")
    if args.verb == "search" and not 2 <= args.k <= 24:
        parser.error("search dimension k must lie in 2..24")
    if args.verb == "oracle" and not 1 <= args.k <= 8:
        parser.error("oracle dimension k must lie in 1..8")
    return args


def main(argv: list[str] | None = None) -> int:
    args = parse_command(sys.argv[1:] if argv is None else argv)
    try:
        return args.func(args)
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
