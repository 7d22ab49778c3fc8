"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 domain error (e.g. a statistic pair
no graph realizes, or an observed mean admitting no MLE), 3 resource guard.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .extremal import NotRealizableError, realize
from .fan import ConeClass, alpha, classify_direction
from .graph import (GraphFormatError, core_decompose, format_edge_list,
                    read_edge_list)
from .model import (CensusSizeError, build_census, distribution_rows, mle_fit)
from .polytope import build_polytope
from .sampler import chain_trace, extremal_experiment


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _pair(text: str, convert, what: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"{what} must be two comma-separated values")
    try:
        return (convert(parts[0].strip()), convert(parts[1].strip()))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"cannot parse {what} from {text!r}") from None


def _float_pair(text: str):
    return _pair(text, float, "pair")


def _fraction_pair(text: str):
    # accepts decimals ("0.3") and ratios ("3/10"), both read exactly
    return _pair(text, Fraction, "pair")


def _ladder(text: str):
    try:
        values = tuple(float(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse ladder from {text!r}") from None
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="edergm", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"edergm {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("degen", parents=[], description="Core-decompose a graph file.")
    p.add_argument("graph_file", help="edge-list file: header 'n m', lines 'u v'")
    p.set_defaults(func=_cmd_degen)

    p = sub.add_parser("polytope", description="Vertices and lattice counts of the model polytope.")
    p.add_argument("n", type=int)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--points", action="store_true", help="also list every achievable lattice point")
    p.set_defaults(func=_cmd_polytope)

    p = sub.add_parser("realize", description="Construct a graph with the given degeneracy and edge count.")
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.add_argument("e", type=int)
    p.add_argument("-o", "--output", help="write edge list here instead of stdout")
    p.set_defaults(func=_cmd_realize)

    p = sub.add_parser("census", description="Exhaustive statistic census of all labeled graphs.")
    p.add_argument("n", type=int)
    p.add_argument("--cache", help="directory for the census cache")
    p.add_argument("--allow-large", action="store_true",
                   help="lift the n <= 7 enumeration guard")
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("dist", description="Exact class distribution at a parameter point (CSV).")
    p.add_argument("n", type=int)
    p.add_argument("--theta", type=_float_pair, required=True, metavar="T1,T2")
    p.add_argument("--cache", help="directory for the census cache")
    p.set_defaults(func=_cmd_dist)

    p = sub.add_parser("mle", description="Fit theta to an observed normalized mean statistic.")
    p.add_argument("n", type=int)
    p.add_argument("--observed", type=_fraction_pair, required=True, metavar="X,Y",
                   help="normalized mean; decimals and p/q ratios are read exactly")
    p.add_argument("--cache", help="directory for the census cache")
    p.set_defaults(func=_cmd_mle)

    p = sub.add_parser("classify-dir", description="Cone membership and alpha for a direction.")
    p.add_argument("direction", type=_float_pair, metavar="D1,D2")
    p.set_defaults(func=_cmd_classify_dir)

    p = sub.add_parser("sample", description="Metropolis chain trace (CSV: step,e,d,accepted).")
    p.add_argument("n", type=int)
    p.add_argument("--theta", type=_float_pair, required=True, metavar="T1,T2")
    p.add_argument("--steps", type=int, default=100_000)
    p.add_argument("--seed", type=int, required=True,
                   help="required: sampling is never implicitly random")
    p.add_argument("-o", "--output", help="write CSV here instead of stdout")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("extremal", description="Concentration along beta + r*direction (JSON report).")
    p.add_argument("n", type=int)
    p.add_argument("--beta", type=_float_pair, required=True, metavar="B1,B2")
    p.add_argument("--dir", dest="direction", type=_float_pair, required=True, metavar="D1,D2")
    p.add_argument("--eta", type=float, default=0.15)
    p.add_argument("--r-ladder", type=_ladder, default=None, metavar="R1,R2,...")
    p.add_argument("--seed", type=int, default=None, help="required when n > 7")
    p.add_argument("--chain-samples", type=int, default=100_000)
    p.set_defaults(func=_cmd_extremal)

    return parser


def _cmd_degen(args) -> int:
    g = read_edge_list(args.graph_file)
    dec = core_decompose(g)
    print(f"n {g.n}")
    print(f"edges {g.edge_count}")
    print(f"degeneracy {dec.degeneracy}")
    print("core_numbers " + " ".join(str(c) for c in dec.core_numbers))
    return 0


def _cmd_polytope(args) -> int:
    poly = build_polytope(args.n)
    info = poly.to_json_dict()
    if args.json:
        print(json.dumps(info))
        return 0
    print(f"n {info['n']}")
    print("vertices " + " ".join(f"({e},{d})" for e, d in poly.vertices))
    print(f"integer_points {info['integer_point_count']}")
    num, den = info["p_n"]
    print(f"p_n {num}/{den}")
    if args.points:
        from .polytope import lower_bound, upper_bound
        for d in range(args.n):
            for e in range(upper_bound(args.n, d), lower_bound(args.n, d) + 1):
                print(f"point {e} {d}")
    return 0


def _cmd_realize(args) -> int:
    g = realize(args.n, args.d, args.e)
    text = format_edge_list(g)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_census(args) -> int:
    table = build_census(args.n, cache_dir=args.cache, allow_large=args.allow_large)
    print(f"n {table.n}")
    print(f"classes {len(table.counts)}")
    print(f"graphs {table.total()}")
    print(f"cache {args.cache if args.cache else 'none'}")
    return 0


def _cmd_dist(args) -> int:
    table = build_census(args.n, cache_dir=args.cache)
    print("e,d,count,probability")
    for e, d, count, prob in distribution_rows(table, args.theta):
        print(f"{e},{d},{count},{prob:.12g}")
    return 0


def _cmd_mle(args) -> int:
    table = build_census(args.n, cache_dir=args.cache)
    fit = mle_fit(table, args.observed)
    if fit.status == "no_mle":
        print("NoMLE: the observed mean lies on or outside the polytope boundary",
              file=sys.stderr)
        return 2
    if fit.status == "not_converged":
        print(f"did not converge within iteration cap (gap {fit.gap:.3g})",
              file=sys.stderr)
        return 2
    print(f"theta {fit.theta[0]:.12g} {fit.theta[1]:.12g}")
    print(f"iterations {fit.iterations}")
    print(f"gap {fit.gap:.3g}")
    return 0


def _cmd_classify_dir(args) -> int:
    cone = classify_direction(args.direction)
    point = None if cone is ConeClass.BOUNDARY else list(alpha(args.direction))
    print(json.dumps({
        "direction": list(args.direction),
        "cone": cone.value,
        "alpha": point,
    }))
    return 0


def _cmd_sample(args) -> int:
    e_t, d_t, acc_t = chain_trace(args.n, args.theta, args.steps, args.seed)
    out = sys.stdout if not args.output else open(args.output, "w")
    try:
        out.write("step,e,d,accepted\n")
        for t in range(len(e_t)):
            out.write(f"{t},{e_t[t]},{d_t[t]},{acc_t[t]}\n")
    finally:
        if args.output:
            out.close()
    return 0


def _cmd_extremal(args) -> int:
    report = extremal_experiment(
        args.n, args.beta, args.direction, r_ladder=args.r_ladder,
        eta=args.eta, seed=args.seed, chain_samples=args.chain_samples)
    print(report.to_json())
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except CensusSizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (NotRealizableError, GraphFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
