"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bounds, combinatorics, constructions, cover, graphs, setsystem
from .errors import BudgetError, CffError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _emit(text: str, out: str | None = None) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _pair(text: str) -> tuple[int, int]:
    try:
        r, w = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected R,W, got {text!r}") from None
    return r, w


def cmd_bounds(args) -> int:
    rep = bounds.best_bounds(args.r, args.w, args.d, args.t, c=args.c,
                             epsilon=args.epsilon, log_base=args.log_base)
    _emit(rep.dumps() if args.format == "structured" else rep.format_human())
    return EXIT_OK


def cmd_verify_cff(args) -> int:
    sys_ = setsystem.parse_incidence(_read(args.file))
    ok, witness = setsystem.is_cff(sys_, args.r, args.w, args.d)
    label = f"({args.r},{args.w};{args.d})-CFF({sys_.n_points},{sys_.t})"
    if args.format == "structured":
        doc = {"ok": ok, "n_points": sys_.n_points, "t": sys_.t, "witness": None}
        if witness:
            doc["witness"] = {"L": list(witness.L), "M": list(witness.M), "shortfall": witness.shortfall}
        _emit(json.dumps(doc, sort_keys=True))
    elif ok:
        _emit(f"ok: {label}")
    else:
        _emit(f"FAIL: not a {label}; L={list(witness.L)} M={list(witness.M)} "
              f"shortfall {witness.shortfall}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify_cover(args) -> int:
    c = cover.loads_cover(_read(args.file))
    if args.d is not None:
        c = c.with_d(args.d)
    check = cover.validate_cover(c)
    if check.ok:
        _emit(f"ok: {len(c)} bicliques cover {c.host.family} at level {c.d} "
              f"(min coverage {check.min_coverage})")
        return EXIT_OK
    _emit(f"FAIL: {check.reason}")
    return EXIT_FAIL


def cmd_verify_hadamard(args) -> int:
    h = constructions.HadamardMatrix.loads(_read(args.file))
    if h.is_hadamard():
        _emit(f"ok: Hadamard matrix of order {h.order}" + (" (normalized)" if h.normalized else ""))
        return EXIT_OK
    _emit(f"FAIL: H H^T != {h.order} I")
    return EXIT_FAIL


def cmd_solve(args) -> int:
    if args.graph:
        g = graphs.LabeledGraph.loads(_read(args.graph))
    else:
        g = graphs.build_graph(args.family)
    res = cover.exact_bcd(g, args.d, budget=args.budget)
    if args.cover_out and res.cover is not None:
        Path(args.cover_out).write_text(cover.dumps_cover(res.cover) + "\n")
    if args.format == "structured":
        doc = {
            "host": g.family, "d": args.d, "exact": res.exact, "value": res.value,
            "lower": res.lower, "upper": res.upper, "nodes": res.nodes, "method": res.method,
            "cover": cover.cover_to_dict(res.cover) if res.cover else None,
        }
        _emit(json.dumps(doc, indent=1, sort_keys=True))
    elif res.exact:
        _emit(f"bc_{args.d}({g.family}) = {res.value}  [exact, {res.method}, {res.nodes} nodes]")
    else:
        _emit(f"bc_{args.d}({g.family}) in [{res.lower}, {res.upper}]  "
              f"[inexact: budget of {args.budget} nodes exhausted]")
    return EXIT_OK if res.exact else EXIT_BUDGET


def cmd_construct(args) -> int:
    if args.what == "hadamard":
        _emit(constructions.hadamard_matrix(args.order).dumps(), args.output)
    elif args.what == "hadamard-cff":
        _emit(setsystem.emit_incidence(constructions.hadamard_cff(args.d)), args.output)
    else:
        c = constructions.orbit_cover(args.t, args.r, args.w)
        _emit(cover.dumps_cover(c), args.output)
    return EXIT_OK


def cmd_convert(args) -> int:
    if args.what == "cff-to-cover":
        sys_ = setsystem.parse_incidence(_read(args.file))
        c = constructions.cff_to_cover(sys_, args.r, args.w, args.d)
        _emit(cover.dumps_cover(c), args.output)
        check = cover.validate_cover(c)
        if not check.ok:
            print(f"warning: input is not an ({args.r},{args.w};{args.d})-CFF; {check.reason}",
                  file=sys.stderr)
            return EXIT_FAIL
    else:
        c = cover.loads_cover(_read(args.file))
        _emit(setsystem.emit_incidence(constructions.cover_to_cff(c)), args.output)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    paths = combinatorics.enumerate_lattice_paths(args.i, args.j)
    for p in paths:
        print(p)
    print(f"# {len(paths)} paths")
    return EXIT_OK


def cmd_setpairs(args) -> int:
    f = constructions.SetPairFamily.loads(_read(args.file))
    if args.what == "dual":
        _emit(constructions.dual_setpairs(f).dumps(), args.output)
        return EXIT_OK
    mode = args.mode
    if mode.startswith("rw:"):
        r, w = _pair(mode[3:])
        check = constructions.setpairs_predicate(f, "rw", r, w)
    else:
        check = constructions.setpairs_predicate(f, mode)
    if check.ok:
        _emit(f"ok: {len(f)} pairs satisfy {mode}")
        return EXIT_OK
    i, j = check.witness
    _emit(f"FAIL: pairs {i} and {j} violate {mode}")
    return EXIT_FAIL


def _mode(text: str) -> str:
    if text in ("weak", "cross") or (text.startswith("rw:") and _pair(text[3:])):
        return text
    raise argparse.ArgumentTypeError("mode must be weak, cross or rw:R,W")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cffcover", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("human", "structured"), default="human")

    b = sub.add_parser("bounds", parents=[fmt], help="bound table for N((r,w;d),t)")
    b.add_argument("--r", type=int, required=True)
    b.add_argument("--w", type=int, required=True)
    b.add_argument("--d", type=int, default=1)
    b.add_argument("--t", type=int, required=True)
    b.add_argument("--c", type=float, default=None,
                   help="constant for the heuristic density bounds (1/8 is the conservative citable value)")
    b.add_argument("--epsilon", type=float, default=None)
    b.add_argument("--log-base", type=float, default=2.0)
    b.set_defaults(func=cmd_bounds)

    v = sub.add_parser("verify-cff", parents=[fmt], help="check an incidence matrix")
    v.add_argument("file")
    v.add_argument("--r", type=int, required=True)
    v.add_argument("--w", type=int, required=True)
    v.add_argument("--d", type=int, default=1)
    v.set_defaults(func=cmd_verify_cff)

    vc = sub.add_parser("verify-cover", help="validate a biclique cover document")
    vc.add_argument("file")
    vc.add_argument("--d", type=int, default=None, help="override the document's level")
    vc.set_defaults(func=cmd_verify_cover)

    vh = sub.add_parser("verify-hadamard", help="check H H^T = n I")
    vh.add_argument("file")
    vh.set_defaults(func=cmd_verify_hadamard)

    s = sub.add_parser("solve-bc", parents=[fmt], help="exact d-biclique covering number")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", help="it:T,R,W | subset:T,W,R | kminus:N | complete:N")
    src.add_argument("--graph", help="graph document (JSON)")
    s.add_argument("--d", type=int, default=1)
    s.add_argument("--budget", type=int, default=cover.DEFAULT_BUDGET)
    s.add_argument("--threads", type=int, default=1, help="accepted; the solver runs single-threaded")
    s.add_argument("--cover-out", help="write the best cover found to this file")
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("construct", help="emit a construction")
    csub = c.add_subparsers(dest="what", required=True)
    h = csub.add_parser("hadamard")
    h.add_argument("--order", type=int, required=True)
    hc = csub.add_parser("hadamard-cff")
    hc.add_argument("--d", type=int, required=True)
    oc = csub.add_parser("orbit-cover")
    for name in ("--t", "--r", "--w"):
        oc.add_argument(name, type=int, required=True)
    for q in (h, hc, oc):
        q.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    cv = sub.add_parser("convert", help="CFF <-> biclique cover")
    cvsub = cv.add_subparsers(dest="what", required=True)
    c2 = cvsub.add_parser("cff-to-cover")
    c2.add_argument("file")
    c2.add_argument("--r", type=int, required=True)
    c2.add_argument("--w", type=int, required=True)
    c2.add_argument("--d", type=int, default=1)
    c3 = cvsub.add_parser("cover-to-cff")
    c3.add_argument("file")
    for q in (c2, c3):
        q.add_argument("-o", "--output")
    cv.set_defaults(func=cmd_convert)

    e = sub.add_parser("enumerate", help="enumerate combinatorial objects")
    esub = e.add_subparsers(dest="what", required=True)
    lp = esub.add_parser("lattice-paths")
    lp.add_argument("--i", type=int, required=True)
    lp.add_argument("--j", type=int, required=True)
    e.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("setpairs", help="set-pair family checks")
    spsub = sp.add_subparsers(dest="what", required=True)
    chk = spsub.add_parser("check")
    chk.add_argument("file")
    chk.add_argument("--mode", type=_mode, required=True)
    du = spsub.add_parser("dual")
    du.add_argument("file")
    du.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_setpairs)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (CffError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
