"""Command-line front end.

Exit status: 0 on success, 1 when a verification or cross-check fails,
2 on usage and parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .affine import AffineError, format_element, parse_element, si_gap
from .laurent import IntLaurentPoly
from .periodic import (
    dbg_to_dot,
    dbg_to_json,
    enumerate_dbp,
    enumerate_si_paths,
    format_dbpath,
    format_path,
    periodic_r_dbg,
    periodic_r_paths,
    run_suite,
)
from .periodic.suite import SUITES
from .rootsys import (
    CartanDatum,
    ReflectionOrder,
    RootSystem,
    RootSystemError,
    all_reflection_orders,
    build_root_system,
    default_reflection_order,
    reflection_order_from_reduced_word,
)
from .rpoly import r_dyer, r_recursive

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SUPPORTED = {"A": 4, "B": 3, "C": 3, "D": 4, "G": 2}


class UsageError(Exception):
    pass


@dataclass
class JobConfig:
    rs: RootSystem
    orders: list[ReflectionOrder]
    y: str | None
    w: str | None
    radius: int
    fmt: str
    list_paths: bool
    suite: str


def _datum(type_arg: str, rank: int | None) -> CartanDatum:
    text = type_arg.strip().upper()
    family = text[:1]
    rest = text[1:]
    if rest and rank is not None and int(rest) != rank:
        raise UsageError(f"--type {type_arg} conflicts with --rank {rank}")
    if rest:
        if not rest.isdigit():
            raise UsageError(f"cannot parse --type {type_arg!r}")
        rank = int(rest)
    if rank is None:
        raise UsageError("rank missing: use --type A2 or --type A --rank 2")
    if family not in SUPPORTED:
        raise UsageError(f"family {family!r} is not supported (supported: A<=4, B/C<=3, D4, G2)")
    if family == "D" and rank != 4 or family != "D" and rank > SUPPORTED[family]:
        raise UsageError(f"{family}{rank} is outside the supported desk-scale set (A<=4, B/C<=3, D4, G2)")
    try:
        return CartanDatum(family, rank)
    except RootSystemError as exc:
        raise UsageError(str(exc)) from exc


def _orders(rs: RootSystem, text: str | None) -> list[ReflectionOrder]:
    if text is None or text.strip() == "":
        return [default_reflection_order(rs)]
    if text.strip().lower() == "all":
        return all_reflection_orders(rs)
    try:
        word = [int(x) for x in text.split(",")]
        return [reflection_order_from_reduced_word(rs, word)]
    except (ValueError, RootSystemError) as exc:
        raise UsageError(f"bad --order {text!r}: {exc}") from exc


def build_config(args: argparse.Namespace) -> JobConfig:
    rs = build_root_system(_datum(args.type, args.rank))
    return JobConfig(
        rs=rs,
        orders=_orders(rs, getattr(args, "order", None)),
        y=getattr(args, "y", None),
        w=getattr(args, "w", None),
        radius=getattr(args, "radius", 1),
        fmt=args.format,
        list_paths=getattr(args, "list_paths", False),
        suite=getattr(args, "suite", "all"),
    )


def _element(rs: RootSystem, text: str | None, name: str):
    if text is None:
        raise UsageError(f"--{name} is required")
    try:
        return parse_element(rs, text)
    except (AffineError, RootSystemError) as exc:
        raise UsageError(f"--{name}: {exc}") from exc


def _poly_out(p: IntLaurentPoly):
    return p.to_json()


def _emit(cfg: JobConfig, data: dict, human: list[str]) -> None:
    if cfg.fmt == "json":
        print(json.dumps(data, indent=2, ensure_ascii=False))
    else:
        print("\n".join(human))


def cmd_finite_r(cfg: JobConfig) -> int:
    rs = cfg.rs
    y, w = _element(rs, cfg.y, "y"), _element(rs, cfg.w, "w")
    if any(y.wt) or any(w.wt):
        raise UsageError("finite-r takes elements of the finite Weyl group (wt must be 0)")
    rec = r_recursive(y.cl, w.cl)
    results = []
    for order in cfg.orders:
        results.append((order, r_dyer(y.cl, w.cl, order)))
    agree = all(v == rec for _, v in results)
    data = {
        "type": rs.datum.name,
        "y": list(y.cl.reduced_word),
        "w": list(w.cl.reduced_word),
        "r_recursive": _poly_out(rec),
        "r_dyer": [{"order": [list(rs.roots[b]) for b in o.sequence], "value": _poly_out(v)} for o, v in results],
        "agree": agree,
    }
    human = [f"type {rs.datum.name}", f"y = {y.cl}", f"w = {w.cl}", f"recursive: {rec}"]
    for o, v in results:
        human.append(f"dyer [{o.describe()}]: {v}")
    if rec.is_zero():
        human.append("note: y is not below w in the Bruhat order")
    else:
        human.append(f"degree: {rec.degree}")
    human.append(f"agree: {'yes' if agree else 'NO'}")
    _emit(cfg, data, human)
    return EXIT_OK if agree else EXIT_FAIL


def cmd_periodic_r(cfg: JobConfig) -> int:
    rs = cfg.rs
    y, w = _element(rs, cfg.y, "y"), _element(rs, cfg.w, "w")
    negative = any(b < a for a, b in zip(y.wt, w.wt))
    entries = []
    all_agree = True
    for order in cfg.orders:
        pv = periodic_r_paths(y, w, order)
        dv = periodic_r_dbg(y, w, order)
        agree = pv == dv
        all_agree &= agree
        entry = {
            "order": [list(rs.roots[b]) for b in order.sequence],
            "paths_model": _poly_out(pv),
            "dbg_model": _poly_out(dv),
            "agree": agree,
        }
        if cfg.list_paths:
            entry["paths"] = [p.to_json() for p in enumerate_si_paths(y, w, order)]
            entry["dbg_paths"] = [p.to_json() for p in enumerate_dbp(y, w, order)]
        entries.append((order, pv, dv, agree, entry))
    data = {
        "type": rs.datum.name,
        "y": format_element(y),
        "w": format_element(w),
        "si_gap": si_gap(y, w),
        "results": [e[-1] for e in entries],
        "agree": all_agree,
    }
    human = [f"type {rs.datum.name}", f"y = {format_element(y)}", f"w = {format_element(w)}", f"semi-infinite gap: {si_gap(y, w)}"]
    for order, pv, dv, agree, _ in entries:
        human.append(f"order: {order.describe()}")
        human.append(f"  path model: {pv}")
        human.append(f"  DBG model:  {dv}")
        human.append(f"  agree: {'yes' if agree else 'NO'}")
        if cfg.list_paths:
            for p in enumerate_si_paths(y, w, order):
                human.append(f"    path: {format_path(p)}")
            for p in enumerate_dbp(y, w, order):
                human.append(f"    dbg:  {format_dbpath(p)}")
    if negative:
        human.append("note: wt(w) - wt(y) has a negative coordinate, so no path exists")
    _emit(cfg, data, human)
    return EXIT_OK if all_agree else EXIT_FAIL


def cmd_dbg_export(cfg: JobConfig) -> int:
    if cfg.fmt == "json":
        print(dbg_to_json(cfg.rs))
    else:
        sys.stdout.write(dbg_to_dot(cfg.rs))
    return EXIT_OK


def cmd_verify(cfg: JobConfig) -> int:
    ok = True
    reports = []
    for order in cfg.orders:
        rep = run_suite(cfg.rs, cfg.radius, cfg.suite, order=order)
        reports.append(rep)
        ok &= rep.passed
    if cfg.fmt == "json":
        print(json.dumps({"passed": ok, "reports": [r.to_json() for r in reports]}, indent=2, ensure_ascii=False))
    else:
        for rep in reports:
            print(rep.format())
            if not rep.passed:
                name, details = rep.first_failure()
                print(f"first counterexample ({name}): {details}")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="periodic-rpoly", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("human", "json"), default="human"):
        p.add_argument("--type", required=True, help="Cartan type, e.g. A2 (or a family letter with --rank)")
        p.add_argument("--rank", type=int, default=None)
        p.add_argument("--format", choices=formats, default=default)

    p = sub.add_parser("finite-r", help="ordinary R-polynomial, recursion vs chain formula")
    common(p)
    p.add_argument("--y", required=True, help="reduced word such as 1,2 (empty for the identity)")
    p.add_argument("--w", required=True)
    p.add_argument("--order", help="reduced word of w0 defining the reflection order, or 'all'")

    p = sub.add_parser("periodic-r", help="periodic R-polynomial in both path models")
    common(p)
    p.add_argument("--y", required=True, help="element as cl=<word>;wt=<ints>")
    p.add_argument("--w", required=True)
    p.add_argument("--order")
    p.add_argument("--list-paths", action="store_true")

    p = sub.add_parser("dbg-export", help="the double Bruhat graph as DOT or JSON")
    common(p, formats=("dot", "json"), default="dot")

    p = sub.add_parser("verify", help="run verification suites")
    common(p)
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--order")
    return parser


COMMANDS = {
    "finite-r": cmd_finite_r,
    "periodic-r": cmd_periodic_r,
    "dbg-export": cmd_dbg_export,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        cfg = build_config(args)
        if getattr(args, "radius", 0) < 0:
            raise UsageError("--radius must be non-negative")
        return COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
