"""Command-line front end.

Every command prints one canonical JSON document (sorted keys, compact) on
stdout.  Exit codes: 0 success, 1 a verification failed, 2 usage or input
error, 3 the resource ceiling was hit.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Dict

from . import qseries as qs
from . import verify as vf
from .bijections import (
    BijectionError,
    UpliftCertificate,
    burge_F,
    durfee_frobenius,
    durfee_frobenius_inverse,
    frobenius_to_overpartition,
    frobenius_to_path,
    overpartition_to_frobenius,
    path_to_frobenius,
    uplift,
    uplift_inverse,
)
from .core import (
    FrobeniusSymbol,
    InvalidObject,
    Overpartition,
    TwoModularDiagram,
    durfee_dissection,
    generalized_durfee_size,
    in_family_b,
    iter_frobenius,
    iter_overpartitions,
    iter_superpartitions,
    iter_two_modular,
    multiplicity_sequence,
    n_durfee_size,
    phi_inverse,
    phi_two_modular,
    sequence_length,
    successive_ranks,
)
from .paths import InvalidPath, LatticePath, enumerate_paths, path_stats, relative_heights, validate

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3

OBJECTS = ("overpartition", "frobenius", "path", "two-modular", "superpartition", "certificate")


class UsageError(Exception):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _need(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError(f"{args.command} needs --{' --'.join(missing)}")


# ---------------------------------------------------------------------------
# object I/O

def two_modular_json(d: TwoModularDiagram) -> dict:
    return {"rows": [list(r) for r in d.rows]}


def load_object(kind: str, obj):
    if kind == "overpartition":
        return Overpartition.from_json(obj)
    if kind == "frobenius":
        return FrobeniusSymbol.from_json(obj)
    if kind == "path":
        return LatticePath.from_json(obj)
    if kind == "two-modular":
        return TwoModularDiagram(tuple(tuple(r) for r in obj["rows"]))
    if kind == "certificate":
        return UpliftCertificate.from_json(obj)
    raise UsageError(f"cannot read objects of kind {kind!r}")


def parse_text(kind: str, text: str):
    if kind == "overpartition":
        return Overpartition.parse(text)
    if kind == "frobenius":
        return FrobeniusSymbol.parse(text)
    raise UsageError("--text is only available for overpartitions and Frobenius symbols")


def read_input(args, kind: str):
    if getattr(args, "text", None) is not None:
        return parse_text(kind, args.text)
    src = args.input or "-"
    raw = sys.stdin.read() if src == "-" else open(src, encoding="utf-8").read()
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"input is not JSON: {exc}") from None
    try:
        return load_object(kind, obj)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed {kind} JSON: {exc}") from None


# ---------------------------------------------------------------------------
# subcommands

def cmd_enumerate(args) -> tuple:
    _need(args, "object", "n")
    vf.guard(args.n)
    kind = args.object
    if kind == "overpartition":
        out = [op.to_json() for op in iter_overpartitions(args.n)]
    elif kind == "frobenius":
        out = [f.to_json() for f in iter_frobenius(args.n)]
    elif kind == "two-modular":
        out = [two_modular_json(d) for d in iter_two_modular(args.n)]
    elif kind == "superpartition":
        out = [sp.to_json() for sp in iter_superpartitions(args.n)]
    elif kind == "path":
        _need(args, "k", "i")
        out = [p.to_json() for p in enumerate_paths(args.k, args.i, args.n)]
    else:
        raise UsageError(f"cannot enumerate {kind!r}")
    return out, EXIT_OK


def _op_stats(op: Overpartition, args) -> dict:
    out = {"weight": op.weight, "overlined": op.overlined_count, "parts": len(op),
           "multiplicity_sequence": [[c, o] for c, o in multiplicity_sequence(op).entries],
           "sequence_length": sequence_length(op),
           "generalized_durfee": generalized_durfee_size(op)}
    if args.durfee_n is not None:
        out["n_durfee"] = n_durfee_size(op, args.durfee_n)
    if args.k is not None and args.i is not None:
        prof = durfee_dissection(op, args.k, args.i)
        out["in_family_b"] = in_family_b(op, args.k, args.i)
        out["durfee_profile"] = None if prof is None else list(prof.sizes)
    return out


def cmd_stats(args) -> tuple:
    _need(args, "object")
    kind = args.object
    obj = read_input(args, kind)
    if kind == "overpartition":
        out = _op_stats(obj, args)
    elif kind == "frobenius":
        out = {"weight": obj.weight, "columns": len(obj), "ranks": successive_ranks(obj),
               "non_overlined_bottom": obj.non_overlined_bottom}
    elif kind == "path":
        major, south, npeaks = path_stats(obj)
        out = {"major_index": major, "south": south, "peaks": npeaks,
               "relative_heights": relative_heights(obj)}
        if args.k is not None and args.i is not None:
            out["valid"] = validate(obj, args.k, args.i)
    elif kind == "two-modular":
        out = {"weight": obj.weight, "ones": obj.ones, "rows": [sum(r) for r in obj.rows]}
    else:
        raise UsageError(f"no statistics for {kind!r}")
    return out, EXIT_OK


def _with_ki(fn):
    def run(obj, args):
        _need(args, "k", "i")
        return fn(obj, args.k, args.i)
    return run


# map name -> direction -> (input kind, function(obj, args))
MAPS: Dict[str, Dict[str, tuple]] = {
    "frobenius": {
        "forward": ("frobenius", lambda f, a: frobenius_to_overpartition(f)),
        "inverse": ("overpartition", lambda op, a: overpartition_to_frobenius(op)),
    },
    "durfee": {
        "forward": ("frobenius", lambda f, a: durfee_frobenius(f)),
        "inverse": ("overpartition", lambda op, a: durfee_frobenius_inverse(op)),
    },
    "path": {
        "forward": ("path", _with_ki(path_to_frobenius)),
        "inverse": ("frobenius", _with_ki(frobenius_to_path)),
    },
    "uplift": {
        "forward": ("certificate", lambda c, a: uplift(c)),
        "inverse": ("path", _with_ki(uplift_inverse)),
    },
    "two-modular": {
        "forward": ("two-modular", lambda d, a: phi_two_modular(d)),
        "inverse": ("overpartition", lambda op, a: phi_inverse(op)),
    },
    "burge": {
        "forward": ("overpartition", lambda op, a: burge_F(multiplicity_sequence(op)).to_overpartition()),
    },
}


def _serialize(obj):
    if isinstance(obj, TwoModularDiagram):
        return two_modular_json(obj)
    return obj.to_json()


def cmd_biject(args) -> tuple:
    _need(args, "map")
    directions = MAPS[args.map]
    if args.direction not in directions:
        raise UsageError(f"map {args.map!r} has no {args.direction} direction")
    kind, fn = directions[args.direction]
    return _serialize(fn(read_input(args, kind), args)), EXIT_OK


SERIES = ("e", "d", "j", "h", "product", "specialized", "overpartitions")


def cmd_series(args) -> tuple:
    name, qmax = args.name, args.qmax
    if name == "overpartitions":
        s = qs.overpartition_gf(qmax)
    else:
        _need(args, "k", "i")
        k, i = args.k, args.i
        if name == "e":
            s = qs.e_series(k, i, qmax)
        elif name == "d":
            s = qs.d_series(k, i, qmax)
        elif name == "j":
            s = qs.j_series(k, i, qmax, args.xmax)
        elif name == "h":
            s = qs.h_series(k, i, qmax, args.xmax)
        else:
            _need(args, "which")
            s = (qs.product_side if name == "product" else qs.specialized_e)(args.which, k, i, qmax)
    return s.to_json(), EXIT_OK


IDENTITIES = ("main", "path-series", "closed-forms", "durfee-series", "products", "n-durfee", "part-counts", "burge",
              "moves", "prop71", "thm72", "thm73", "telescoping")


def cmd_verify(args) -> tuple:
    ident = args.identity
    nmax = args.nmax if args.nmax is not None else 14
    qmax = args.qmax if args.qmax is not None else (40 if ident == "products" and args.which in ("eq3", "eq4") else 30)
    if ident == "moves":
        report = vf.random_move_check(args.trials, args.seed, nmax=min(nmax, 12))
    elif ident == "n-durfee":
        _need(args, "durfee_n")
        report = vf.verify_n_durfee(args.durfee_n, qmax, args.nmax)
    elif ident == "closed-forms":
        _need(args, "k")
        report = vf.verify_closed_forms(args.k, args.nmax if args.nmax is not None else 6, qmax)
    elif ident == "burge":
        _need(args, "k")
        report = vf.verify_burge(args.k, nmax)
    else:
        _need(args, "k", "i")
        k, i = args.k, args.i
        if ident == "main":
            interval = tuple(args.rank_interval) if args.rank_interval else None
            report = vf.verify_main(k, i, nmax, rank_interval=interval)
        elif ident == "path-series":
            report = vf.verify_path_series(k, i, nmax)
        elif ident == "durfee-series":
            report = vf.verify_durfee_series(k, i, qmax)
        elif ident == "products":
            _need(args, "which")
            report = vf.verify_product_side(args.which, k, i, qmax)
        elif ident == "part-counts":
            report = vf.verify_part_counts(k, i, nmax)
        elif ident == "telescoping":
            report = vf.verify_telescoping(k, i, qmax)
        else:
            report = vf.verify_section7(ident, k, i, nmax)
    return report, EXIT_OK if report["pass"] else EXIT_FAIL


# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="overlab", description="Exact experiments with overpartition identities.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--k", type=int)
        sp.add_argument("--i", type=int)

    def source(sp):
        sp.add_argument("--input", help="JSON file, or - for stdin (default)")
        sp.add_argument("--text", help="object in text notation, e.g. \"5' 4 3\" or \"7 4 / 3' 1\"")

    sp = sub.add_parser("enumerate", help="list every object of a given size")
    sp.add_argument("--object", choices=OBJECTS[:-1])
    sp.add_argument("--n", type=int)
    common(sp)

    sp = sub.add_parser("stats", help="statistics of one object")
    sp.add_argument("--object", choices=OBJECTS[:-1])
    sp.add_argument("--durfee-n", type=int, dest="durfee_n")
    common(sp)
    source(sp)

    sp = sub.add_parser("biject", help="apply a bijection or its inverse")
    sp.add_argument("--map", choices=sorted(MAPS))
    sp.add_argument("--direction", choices=("forward", "inverse"), default="forward")
    common(sp)
    source(sp)

    sp = sub.add_parser("series", help="print series coefficients")
    sp.add_argument("--name", choices=SERIES, default="e")
    sp.add_argument("--which", choices=sorted(qs.SPECIALISATIONS))
    sp.add_argument("--qmax", type=int, default=30)
    sp.add_argument("--xmax", type=int)
    common(sp)

    sp = sub.add_parser("verify", help="check an identity exhaustively")
    sp.add_argument("--identity", choices=IDENTITIES, default="main")
    sp.add_argument("--which", choices=sorted(qs.SPECIALISATIONS))
    sp.add_argument("--nmax", type=int)
    sp.add_argument("--qmax", type=int)
    sp.add_argument("--durfee-n", type=int, dest="durfee_n")
    sp.add_argument("--rank-interval", type=int, nargs=2, metavar=("LO", "HI"))
    sp.add_argument("--trials", type=int, default=10000)
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    return p


COMMANDS: Dict[str, Callable] = {
    "enumerate": cmd_enumerate,
    "stats": cmd_stats,
    "biject": cmd_biject,
    "series": cmd_series,
    "verify": cmd_verify,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        out, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except vf.ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=stderr)
        return EXIT_LIMIT
    except (InvalidObject, InvalidPath, BijectionError, qs.SeriesError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    print(dumps(out), file=stdout)
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
