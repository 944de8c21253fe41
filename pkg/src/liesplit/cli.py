"""Command-line interface: case studies, ad-hoc checks, and reports.

Subcommands
    case      run a named case study and print its report
    check-ggs degree-sum test for a basis against a subalgebra
    weyl-w0   normalizer/centralizer orders and restriction table
    index     sampled index estimate for an algebra

Exit code 0 means every asserted verdict holds; the first failed verdict
is named on stderr otherwise.  Reports serialize as JSON with the stable
top-level fields {case, params, seed, verdicts, tables, timings_ms}.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .liealg import algebra_from_json, build_algebra
from .invariants import ggs_check, hilbert_basis
from .poisson import index_estimate
from .splitting import make_decomposition, make_splitting
from .weyl import SatakeDiagram, build_root_system, enumerate_weyl, restriction_check, \
    satake_subspaces, w0_compute
from .zalgebra import available_cases, run_case


def _load_algebra(spec: str):
    """'sl:4', 'gl:3', 'so:8', 'double:sl:3', or a path to a constants file."""
    if ":" in spec:
        parts = spec.split(":")
        kind = parts[0]
        if kind == "double":
            return build_algebra("double", base=build_algebra(parts[1], n=int(parts[2])))
        return build_algebra(kind, n=int(parts[1]))
    with open(spec, "r", encoding="utf-8") as fh:
        return algebra_from_json(fh.read())


def _parse_h(spec: str, algebra):
    """'borel', 'glblocks:1,3', or 'indices:0,1,2'."""
    if spec == "borel":
        tri = algebra.triangular
        if tri is None:
            raise SystemExit("borel preset needs a reductive builder algebra")
        return tuple(tri.plus) + tuple(tri.cartan)
    if spec.startswith("indices:"):
        return tuple(int(x) for x in spec.split(":", 1)[1].split(","))
    if spec.startswith("glblocks:"):
        sizes = [int(x) for x in spec.split(":", 1)[1].split(",")]
        bounds = []
        start = 0
        for s in sizes:
            bounds.append((start, start + s))
            start += s
        if algebra.realization is None:
            raise SystemExit("glblocks needs a matrix builder algebra")

        def in_block(r, c):
            return any(a <= r < b and a <= c < b for a, b in bounds)

        out = []
        for idx, mat in enumerate(algebra.realization):
            support = list(mat)
            if all(in_block(r, c) for r, c in support):
                out.append(idx)
        return tuple(out)
    raise SystemExit(f"cannot parse --h {spec!r}")


def _emit(doc: dict, fmt: str):
    if fmt == "json":
        print(json.dumps(doc, indent=1, default=str))
    else:
        _markdown(doc)


def _markdown(doc: dict, depth: int = 2):
    title = doc.get("case") or "report"
    print(f"{'#' * depth} {title}")
    for key in ("params", "seed", "version"):
        if key in doc:
            print(f"- {key}: {doc[key]}")
    verdicts = doc.get("verdicts", {})
    if verdicts:
        print("\n| verdict | holds |")
        print("|---|---|")
        for k, v in verdicts.items():
            print(f"| {k} | {'yes' if v else 'NO'} |")
    tables = doc.get("tables", {})
    if tables:
        print("\n| table entry | value |")
        print("|---|---|")
        for k, v in tables.items():
            print(f"| {k} | {v} |")
    if "timings_ms" in doc:
        print(f"\n- timings_ms: {doc['timings_ms']}")


def _cmd_case(args) -> int:
    params = {}
    if args.n is not None:
        params["n"] = args.n
    if args.t1 is not None:
        params["t1"] = args.t1
    rep = run_case(args.name, params, seed=args.seed, trials=args.trials, dmax=args.dmax)
    _emit(rep.to_dict(), args.format)
    if not rep.passed:
        failed = [k for k, v in rep.verdicts.items() if not v]
        print(f"FAILED verdict: {failed[0]}", file=sys.stderr)
        return 1
    return 0


def _cmd_check_ggs(args) -> int:
    algebra = _load_algebra(args.algebra)
    h = _parse_h(args.h, algebra)
    try:
        deco = make_splitting(algebra, h)
    except ValueError:
        deco = make_decomposition(algebra, h)
    basis = hilbert_basis(algebra, args.basis)
    rep = ggs_check(deco, basis, side=args.side, seed=args.seed)
    doc = {
        "case": "check-ggs",
        "params": {"algebra": args.algebra, "h": args.h, "basis": args.basis},
        "seed": args.seed,
        "verdicts": {"is_ggs": rep.verdict,
                     "criterion_consistent": rep.consistent in (True, None)},
        "tables": {
            "sum_m": rep.sum_m,
            "dim_m": rep.dim_m,
            "jacobian_rank": rep.jacobian_rank_top,
            "rows": [
                {"degree": r.degree, "deg_m": r.deg_m_top, "bidegree": list(r.bidegree_top)}
                for r in rep.rows
            ],
        },
        "timings_ms": {},
    }
    _emit(doc, args.format)
    return 0 if rep.consistent in (True, None) else 1


def _cmd_weyl_w0(args) -> int:
    rank = None if args.type == "E6" else args.rank
    rs = build_root_system(args.type, rank)
    W = enumerate_weyl(rs, cap=args.cap)
    arrows = tuple(
        tuple(int(x) for x in pair.split(":")) for pair in args.arrows.split(",")
    )
    t0, _ = satake_subspaces(rs, SatakeDiagram(arrows))
    rep = w0_compute(W, t0)
    rc = restriction_check(W, t0, rep, dmax=args.dmax)
    doc = {
        "case": "weyl-w0",
        "params": {"type": args.type, "rank": rs.rank, "arrows": args.arrows},
        "seed": 0,
        "verdicts": {"restriction_onto_up_to_dmax": rc.verdict_up_to_dmax},
        "tables": {
            "orders": list(rep.orders),
            "element_orders": {str(k): v for k, v in sorted(rep.element_orders.items())},
            "per_degree": [list(x) for x in rc.per_degree],
            "first_failure_degree": rc.first_failure_degree,
            "dmax": rc.dmax,
        },
        "timings_ms": {},
    }
    _emit(doc, args.format)
    return 0


def _cmd_index(args) -> int:
    algebra = _load_algebra(args.algebra)
    est = index_estimate(algebra, trials=args.trials, seed=args.seed)
    doc = {
        "case": "index",
        "params": {"algebra": args.algebra, "dim": algebra.dim},
        "seed": args.seed,
        "verdicts": {},
        "tables": est.as_dict(),
        "timings_ms": {},
    }
    _emit(doc, args.format)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liesplit",
        description="Exact splitting/contraction toolkit for Lie-Poisson structures",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("case", help="run a named case study")
    p.add_argument("name", choices=available_cases())
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--t1", default=None,
                   help="for the horo case: 'full' or 'zero' toral part")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=8)
    p.add_argument("--dmax", type=int, default=None)
    p.add_argument("--format", choices=("json", "markdown"), default="json")
    p.set_defaults(func=_cmd_case)

    p = sub.add_parser("check-ggs", help="degree-sum generating-system test")
    p.add_argument("--algebra", required=True,
                   help="builder spec like sl:4 / gl:4 / so:8, or a constants file")
    p.add_argument("--h", required=True,
                   help="'borel', 'glblocks:n1,n2,...', or 'indices:i,j,...'")
    p.add_argument("--basis", default="charpoly",
                   choices=("charpoly", "trace_powers", "so_minors_pfaffian"))
    p.add_argument("--side", choices=("h", "r"), default="h")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "markdown"), default="json")
    p.set_defaults(func=_cmd_check_ggs)

    p = sub.add_parser("weyl-w0", help="normalizer quotient and restriction table")
    p.add_argument("--type", required=True, choices=("A", "D", "E6"))
    p.add_argument("--rank", type=int, default=None)
    p.add_argument("--arrows", required=True, help="pairs like 1:5,2:4")
    p.add_argument("--dmax", type=int, default=None)
    p.add_argument("--cap", type=int, default=60000)
    p.add_argument("--format", choices=("json", "markdown"), default="json")
    p.set_defaults(func=_cmd_weyl_w0)

    p = sub.add_parser("index", help="sampled index estimate")
    p.add_argument("--algebra", required=True)
    p.add_argument("--trials", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "markdown"), default="json")
    p.set_defaults(func=_cmd_index)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
