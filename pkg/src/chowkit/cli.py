"""``chowkit`` command line tool.

Every run writes one key-value document (to ``--output`` or stdout).  Errors
are written the same way, as an ``error:`` record, and mapped to exit codes:

====  ======================
0     success
1     internal error
2     parse error
3     precondition failure
4     deadline exceeded
5     not principal
6     unstable count
====  ======================
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import bounds as B
from . import io
from .chow import DEFAULT_SEED, chow_form_cycle
from .errors import (
    ChowkitError,
    DeadlineExceeded,
    NotPrincipal,
    ParseError,
    PreconditionError,
    UnstableCount,
)
from .graphs import compose, dth_root, pushforward_chow, second_degree
from .groebner import Deadline, eliminate, projective_eliminate
from .poly import format_poly, multidegree

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_CODES = [
    (ParseError, 2),
    (PreconditionError, 3),
    (DeadlineExceeded, 4),
    (NotPrincipal, 5),
    (UnstableCount, 6),
]
MAP_CASES = {"map-nef": ("nef", "KYn"), "map-big": ("big", "volKY"), "map-eps": ("eps", "eps")}
SUBCOMMANDS = ("chow", "pushforward", "power-test", "eliminate", "compose", "bounds", "degree2")


def exit_code_for(exc: BaseException) -> int:
    for cls, code in EXIT_CODES:
        if isinstance(exc, cls):
            return code
    return EXIT_INTERNAL


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _fraction_list(text: str) -> list:
    return [_fraction(t) for t in text.split(",") if t.strip()]


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--input", action="append", default=[], metavar="PATH", help="input file (repeat for compose)")
    p.add_argument("--output", metavar="PATH", help="write the result document here instead of stdout")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"randomness seed (default {DEFAULT_SEED})")
    p.add_argument("--deadline-secs", type=float, default=60.0)
    p.add_argument("--max-degree", type=int, default=60)
    p.add_argument("--max-basis", type=int, default=5000)
    p.add_argument("--digit-cap", type=int, default=B.DEFAULT_DIGIT_CAP)
    p.add_argument("--d", type=int, help="root degree for power-test")
    p.add_argument("--drop", default="", help="comma separated blocks to eliminate")
    p.add_argument("--projective", action="store_true", help="eliminate: saturate over the dropped blocks' charts")
    bg = p.add_argument_group("bounds")
    bg.add_argument("--n", type=int)
    bg.add_argument("--rn", type=int)
    bg.add_argument("--volK", type=_fraction)
    bg.add_argument("--volrK", type=_fraction)
    bg.add_argument("--eps", type=_fraction)
    bg.add_argument("--N", type=int)
    bg.add_argument("--dprime", type=int)
    bg.add_argument("--M", type=int)
    bg.add_argument("--gamma", type=int)
    bg.add_argument("--case", choices=B.GRAPH_CASES + tuple(MAP_CASES), default=None)
    bg.add_argument("--volHrK", type=_fraction, help="vol(H + r_n K) for the general graph case")
    bg.add_argument("--intersections", type=_fraction_list, help="H^n, H^(n-1).K, ..., K^n (comma separated)")
    bg.add_argument("--KXn", type=_fraction)
    bg.add_argument("--KYn", type=_fraction)
    bg.add_argument("--volKY", type=_fraction)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chowkit", description="Chow forms, graph pushforwards and finiteness bounds")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        _add_common(sub.add_parser(name, allow_abbrev=False))
    v = sub.add_parser("validate", allow_abbrev=False, help="dry-run structural checks for a job")
    v.add_argument("job", choices=SUBCOMMANDS)
    _add_common(v)
    return parser


def _deadline(args) -> Deadline:
    return Deadline(max_basis_size=args.max_basis, max_total_degree=args.max_degree, wall_budget=args.deadline_secs)


def _one_input(args) -> str:
    if len(args.input) != 1:
        raise PreconditionError(f"expected exactly one --input, got {len(args.input)}")
    return args.input[0]


def _geometry(args) -> B.GeometryInputs:
    missing = [f"--{name}" for name in ("n", "rn", "volK") if getattr(args, name) is None]
    if missing:
        raise PreconditionError(f"bounds need {', '.join(missing)}")
    return B.GeometryInputs(
        n=args.n,
        r_n=args.rn,
        vol_K=args.volK,
        vol_rK=args.volrK,
        N=args.N,
        d_prime=args.dprime,
        eps=args.eps,
        intersection_numbers=args.intersections,
        vol_H_rK=args.volHrK,
    )


# ----------------------------------------------------------------------------
# subcommands; each returns a list of (key, value)

def cmd_chow(args):
    cycle = io.to_cycle(io.read_system(_one_input(args)))
    F = chow_form_cycle(cycle, _deadline(args), args.seed)
    return [("n", F.n), ("k", F.k), ("r", F.r), ("form", format_poly(F.form))]


def cmd_pushforward(args):
    graph = io.to_graph(io.read_system(_one_input(args)))
    res = pushforward_chow(graph, _deadline(args), args.seed)
    items = [("k", res.k), ("d", res.d), ("chow_form", format_poly(res.chow.form))]
    items.append(("root", format_poly(res.root.form)))
    if res.note:
        items.append(("note", res.note))
    return items


def cmd_power_test(args):
    if args.d is None:
        raise PreconditionError("power-test needs --d")
    G = io.to_form(io.read_system(_one_input(args)))
    root = dth_root(G, args.d)
    if root is None:
        return [("power", "no")]
    return [("power", "yes"), ("root", format_poly(root))]


def cmd_eliminate(args):
    sf = io.read_system(_one_input(args))
    drop = [b for b in args.drop.split(",") if b]
    if not drop:
        raise PreconditionError("eliminate needs --drop")
    ideal = io.to_ideal(sf)
    if args.projective:
        res = projective_eliminate(ideal, drop, _deadline(args))
    else:
        res = eliminate(ideal, drop, _deadline(args))
    return [("blocks", res.space.declaration()), ("generators", len(res.gens))] + io.poly_items("generator", res.gens)


def cmd_compose(args):
    if len(args.input) != 2:
        raise PreconditionError("compose needs --input H --input G")
    H, G = (io.to_graph(io.read_system(p)) for p in args.input)
    res = compose(H, G, _deadline(args))
    return [("blocks", res.space.declaration()), ("generators", len(res.gens))] + io.poly_items("generator", res.gens)


def cmd_degree2(args):
    graph = io.to_graph(io.read_system(_one_input(args)))
    return [("degree2", second_degree(graph, _deadline(args), args.seed))]


def cmd_bounds(args):
    g = _geometry(args)
    case = args.case
    if case in MAP_CASES:
        key, flag = MAP_CASES[case]
        if getattr(args, flag) is None:
            raise PreconditionError(f"{case} needs --{flag}")
        if case == "map-nef":
            got = B.map_degree_bounds(g, KX_n=args.KXn, KY_n=args.KYn)
        elif case == "map-big":
            got = B.map_degree_bounds(g, vol_KY=args.volKY)
        else:
            got = B.map_degree_bounds(g)
        return [("case", case), ("map_degree_bound", got[key])]
    if case in B.GRAPH_CASES:
        return [("case", case), ("gamma_X", B.graph_degree_bound(g, case))]
    report = B.total_bound(g, M=args.M, gamma=args.gamma, digit_cap=args.digit_cap)
    return report.as_items()


COMMANDS = {
    "chow": cmd_chow,
    "pushforward": cmd_pushforward,
    "power-test": cmd_power_test,
    "eliminate": cmd_eliminate,
    "compose": cmd_compose,
    "bounds": cmd_bounds,
    "degree2": cmd_degree2,
}


def validate(job: str, args) -> list[str]:
    """Structural diagnostics for ``job``; never runs a Groebner computation."""
    diags = []
    if job == "bounds":
        for name in ("n", "rn", "volK"):
            if getattr(args, name) is None:
                diags.append(f"missing --{name}")
        case = args.case
        need = {
            "map-eps": ["eps"],
            "map-nef": ["KYn"],
            "map-big": ["volKY"],
            "general": ["volHrK"],
            "nef": ["intersections"],
            None: ["N", "dprime"],
        }.get(case, [])
        for name in need:
            if getattr(args, name) is None:
                diags.append(f"case {case or 'total'} needs --{name}")
        if case == "nef" and args.intersections is not None and args.n is not None:
            if len(args.intersections) != args.n + 1:
                diags.append(f"--intersections needs n+1 = {args.n + 1} entries")
        return diags
    want = 2 if job == "compose" else 1
    if len(args.input) != want:
        return [f"{job} needs {want} --input file(s), got {len(args.input)}"]
    if job == "power-test" and (args.d is None or args.d < 1):
        diags.append("power-test needs --d >= 1")
    if job == "eliminate" and not args.drop:
        diags.append("eliminate needs --drop")
    files = []
    for path in args.input:
        try:
            sf = io.read_system(path)
        except ParseError as exc:
            diags.append(f"{path}: {exc}")
            continue
        files.append(sf)
        for msg in io.structural_problems(sf, job):
            diags.append(msg if len(args.input) == 1 else f"{path}: {msg}")
        if job == "eliminate":
            names = {b for b, _ in sf.space.blocks}
            for b in args.drop.split(","):
                if b and b not in names:
                    diags.append(f"--drop block {b!r} not declared")
        if job == "power-test" and not diags and args.d:
            G = io.to_form(sf)
            degs = multidegree(G)
            if any(k % args.d for k in degs):
                diags.append(f"d = {args.d} does not divide the block degrees {degs}")
    if job == "compose" and len(files) == 2 and not diags:
        if files[0].ambient[1] != files[1].ambient[0]:
            diags.append(f"first map lands in P^{files[0].ambient[1]}, second starts in P^{files[1].ambient[0]}")
    return diags


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage to stderr
        if exc.code == 0:
            return EXIT_OK
        sys.stdout.write(io.format_document([("error", "usage"), ("exit_code", 2)]))
        return 2
    output = args.output
    try:
        if args.command == "validate":
            diags = validate(args.job, args)
            items = [("job", args.job), ("diagnostics", len(diags))] + [("diagnostic", d) for d in diags]
        else:
            items = [("command", args.command)] + COMMANDS[args.command](args)
        _emit(io.format_document(items), output)
        return EXIT_OK
    except ChowkitError as exc:
        code = exit_code_for(exc)
        record = [("error", exc.kind), ("message", " ".join(str(exc).split())), ("exit_code", code)]
        if isinstance(exc, DeadlineExceeded):
            record += [
                ("pairs_processed", exc.pairs_processed),
                ("max_degree_seen", exc.max_degree_seen),
                ("basis_size", exc.basis_size),
            ]
        _emit(io.format_document(record), output)
        return code


def main():  # pragma: no cover - thin wrapper
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
