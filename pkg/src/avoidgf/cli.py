"""Command-line front end.

Exit codes: 0 success, 1 domain error, 2 usage error, 3 verification mismatch.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import gfcatalog, oracle
from .bijections import DomainError, brs, brs_inv, kra, kra_inv
from .dyckpath import DyckPath, DyckWordError, from_word, shape_stats, tunnel_stats
from .permcore import CeilingExceeded, Permutation, as_pattern_set, enumerate_avoiders, statistics
from .series import DEFAULT_ORDER, SeriesError

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2, 3


def _emit(obj, fmt: str, text: str | None = None) -> None:
    if fmt == "json":
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text if text is not None else _as_text(obj))


def _as_text(obj) -> str:
    if isinstance(obj, dict):
        width = max((len(str(k)) for k in obj), default=0)
        return "\n".join(f"{str(k):<{width}}  {_flat(v)}" for k, v in sorted(obj.items()))
    return str(obj)


def _flat(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, dict):
        return " ".join(f"{k}={_flat(x)}" for k, x in sorted(v.items()))
    return str(v)


def _path_info(d: DyckPath) -> dict:
    ts = tunnel_stats(d)
    ss = shape_stats(d)
    return {
        "path": d.word,
        "tunnels": {"ct": ts.ct, "rt": ts.rt, "td0": ts.td0, "tdneg": ts.tdneg},
        "shape": {
            "height": ss.height,
            "peaks": ss.peaks,
            "hills": ss.hills,
            "valleys": ss.valleys,
            "height_at_middle": ss.height_at_middle,
            "symmetric": ss.is_symmetric,
            "middle_peak": d.has_middle_peak(),
        },
    }


def cmd_stats(args) -> int:
    perm = Permutation.parse(args.perm)
    _emit(statistics(perm).as_dict(), args.format)
    return EXIT_OK


def cmd_map(args) -> int:
    if args.inverse:
        d = from_word(args.obj)
        perm = kra_inv(d) if args.kra else brs_inv(d)
        out = {"permutation": str(perm), "stats": statistics(perm).as_dict()}
        out.update(_path_info(d))
    else:
        perm = Permutation.parse(args.obj)
        d = kra(perm) if args.kra else brs(perm)
        out = {"permutation": str(perm), "stats": statistics(perm).as_dict()}
        out.update(_path_info(d))
    out["bijection"] = "kra" if args.kra else "brs"
    _emit(out, args.format)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    for perm in enumerate_avoiders(args.n, args.avoid, involutions_only=args.involutions):
        if args.format == "json":
            print(json.dumps(list(perm)))
        else:
            print(str(perm))
    return EXIT_OK


def cmd_distribution(args) -> int:
    dist = oracle.distribution(args.avoid, args.n, involutions_only=args.involutions)
    rows = [{"fp": fp, "exc": exc, "count": c} for fp, exc, c in dist.as_rows()]
    obj = {
        "n": args.n,
        "avoid": str(dist.sigma),
        "involutions": args.involutions,
        "total": dist.total,
        "counts": rows,
    }
    lines = [f"{'fp':>3} {'exc':>3} {'count':>8}"]
    lines += [f"{r['fp']:>3} {r['exc']:>3} {r['count']:>8}" for r in rows]
    lines.append(f"total {dist.total}")
    _emit(obj, args.format, "\n".join(lines))
    return EXIT_OK


def cmd_expand(args) -> int:
    series = gfcatalog.expand(args.id, args.order, args.param)
    if args.format == "json":
        print(series.to_json())
    else:
        print(series.to_text())
    return EXIT_OK


def cmd_verify(args) -> int:
    reports = []
    if args.structures:
        reports.append(oracle.verify_structures(args.nmax if args.nmax is not None else 8))
    else:
        if args.param is not None:
            if not args.id or len(args.id) != 1:
                raise ValueError("--param needs exactly one --id")
            reports.append(oracle.verify_entry(args.id[0], args.nmax, args.param))
        else:
            reports = oracle.run_suite(args.id, args.nmax, args.jobs)
    if args.format == "json":
        print(json.dumps([r.to_dict() for r in reports], sort_keys=True))
    else:
        print(oracle.render_table(reports))
    return EXIT_OK if all(r.ok for r in reports) else EXIT_MISMATCH


def cmd_catalog(args) -> int:
    entries = gfcatalog.list_entries()
    if args.format == "json":
        print(json.dumps(entries, sort_keys=True))
    else:
        for e in entries:
            print(f"{e['id']:<22} {e['kind']:<18} {e['variables']:<9} {e['anchor']}")
    return EXIT_OK


def cmd_inequalities(args) -> int:
    report = oracle.check_inequalities(args.lo, args.hi)
    if args.format == "json":
        print(report.to_json())
    else:
        print(oracle.render_table([report]))
    return EXIT_OK if report.ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="avoidgf",
        description="Fixed points and excedances in restricted permutations.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", parents=[common], help="fp/exc/des/involution of a permutation")
    p.add_argument("perm")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("map", parents=[common], help="apply kra or brs (or an inverse)")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--kra", action="store_true")
    which.add_argument("--brs", action="store_true")
    p.add_argument("--inverse", action="store_true", help="input is a Dyck word")
    p.add_argument("obj", help="permutation such as 6,7,4,3,5,2,8,1 or a U/D word")
    p.set_defaults(func=cmd_map)

    for name, func, helptext in (
        ("enumerate", cmd_enumerate, "list S_n(avoid) or I_n(avoid)"),
        ("distribution", cmd_distribution, "(fp, exc) counts over S_n(avoid)"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--avoid", required=True, type=_pattern_arg, help="patterns such as 123/132")
        p.add_argument("--involutions", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("expand", parents=[common], help="expand a catalog entry as a series")
    p.add_argument("--id", required=True)
    p.add_argument("--order", type=_nonneg, default=DEFAULT_ORDER)
    p.add_argument("--param", type=_nonneg, default=None)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", parents=[common], help="check catalog entries against enumeration")
    p.add_argument("--id", action="append", help="entry id (repeatable); default all")
    p.add_argument("--nmax", type=_nonneg, default=None)
    p.add_argument("--param", type=_nonneg, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--structures", action="store_true", help="check the bijections instead")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", parents=[common], help="list catalog entries")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("inequalities", parents=[common], help="derangement inequality checks")
    p.add_argument("--lo", type=_nonneg, default=4)
    p.add_argument("--hi", type=_nonneg, default=30)
    p.set_defaults(func=cmd_inequalities)
    return parser


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def _pattern_arg(text: str):
    try:
        return as_pattern_set(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (DomainError, DyckWordError, CeilingExceeded, SeriesError,
            gfcatalog.UnknownEntry, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"avoidgf: error: {msg}", file=sys.stderr)
        return EXIT_DOMAIN


def run(argv: list[str] | None = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
