"""Command-line interface.

Exit codes: 0 success, 1 input error, 2 claim not certified (unresolved
regions remain or the bound is not met).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .construction import (
    build_lifting,
    glued_polynomial,
    largest_t,
    reports_csv,
    reports_json,
    reproduce_theorem,
)
from .parabolic import build_system
from .patchwork import (
    DegenerateLiftingError,
    NonIntegerNormalError,
    SupportNotCoveredError,
    patchworking_polynomial,
    read_lifting_csv,
    regular_subdivision,
)
from .plotting import render_svg, trace_curve
from .poly import ParseError, as_rational, from_exchange, parse_poly
from .solver import Box, DegenerateSystemError, SolverConfig, isolate_tspp

EXIT_OK, EXIT_INPUT, EXIT_UNCERTIFIED = 0, 1, 2
MAX_DEGREE = 12


class InputError(Exception):
    pass


def _load_poly(arg: str):
    """Inline expression, or a file holding an expression or exchange lines."""
    text = arg
    path = arg[1:] if arg.startswith("@") else arg
    if arg.startswith("@") or (len(arg) < 4096 and os.path.isfile(arg)):
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc}") from exc
        body = [l.split("#", 1)[0].strip() for l in text.splitlines()]
        body = [l for l in body if l]
        if body and all(len(l.split()) in (3, 4) and "^" not in l and "x" not in l and "y" not in l for l in body):
            poly = from_exchange(text)
            if not hasattr(poly, "eval"):
                raise InputError("parametric polynomial given where f(x, y) is expected")
            return poly
        text = " ".join(body)
    try:
        return parse_poly(text)
    except ParseError as exc:
        raise InputError(f"parse error: {exc}") from exc


def _rational(text: str):
    try:
        return as_rational(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _box(text: str) -> Box:
    try:
        return Box.parse(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _cfg(args) -> SolverConfig:
    return SolverConfig(eps_box=float(args.eps), max_depth=args.depth)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def cmd_analyze(args) -> int:
    f = _load_poly(args.poly)
    try:
        res = isolate_tspp(build_system(f), args.box, _cfg(args))
    except DegenerateSystemError as exc:
        raise InputError(f"degenerate input: {exc}") from exc
    _emit(res.dumps(), args.out)
    return EXIT_OK if res.complete else EXIT_UNCERTIFIED


def cmd_patchwork(args) -> int:
    f = _load_poly(args.poly)
    try:
        lift = read_lifting_csv(args.lifting)
        f_t = patchworking_polynomial(f, lift)
        sub = regular_subdivision(lift)
    except (OSError, ValueError, SupportNotCoveredError, DegenerateLiftingError) as exc:
        raise InputError(str(exc)) from exc
    lines = [str(f_t)]
    for t0 in args.t or []:
        lines.append(str(f_t.specialize(t0)))
    print("\n".join(lines))
    if args.out:
        Path(args.out).write_text(sub.dumps() + "\n")
    return EXIT_OK


def _system_svg(f, window: Box, res: int, points) -> str:
    sys_ = build_system(f)
    curves = {name: trace_curve(p, window, res) for name, p in (("H", sys_.h), ("E1", sys_.e1), ("E2", sys_.e2))}
    return render_svg(curves, window, points)


def cmd_plot(args) -> int:
    f = _load_poly(args.poly)
    points = []
    try:
        result = isolate_tspp(build_system(f), args.window, _cfg(args))
        points = [p.midpoint for p in result.points]
    except DegenerateSystemError:
        pass
    svg = _system_svg(f, args.window, args.res, points)
    try:
        _emit(svg, args.out)
    except OSError as exc:
        raise InputError(str(exc)) from exc
    return EXIT_OK


def cmd_reproduce(args) -> int:
    d = args.d
    if d < 5:
        raise InputError("d < 5: the triangle Delta_d is empty")
    if d > MAX_DEGREE and not args.allow_large:
        raise InputError(f"d > {MAX_DEGREE} needs --allow-large")
    reports = reproduce_theorem(d, args.t or None, _cfg(args), jobs=args.jobs)
    text = reports_json(reports) if args.format == "json" else reports_csv(reports)
    _emit(text, args.out)
    if args.plot:
        outdir = Path(args.plot)
        outdir.mkdir(parents=True, exist_ok=True)
        from .patchwork import patchworking_polynomial as pw

        f_t = pw(glued_polynomial(d), build_lifting(d))
        for r in reports:
            win = args.window
            pts = [p.midpoint for p in r.points if win.contains_point(*(p.enclosure.midpoint))]
            name = f"d{d}_t{'m' if r.t < 0 else 'p'}{r.t.denominator}.svg"
            (outdir / name).write_text(_system_svg(f_t.specialize(r.t), win, args.res, pts))
    held = largest_t(reports)
    print(f"bound {reports[0].bound if reports else None}; largest t meeting it: "
          f"positive {held['positive']}, negative {held['negative']}", file=sys.stderr)
    return EXIT_OK if any(r.inequality_holds for r in reports) else EXIT_UNCERTIFIED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="parabolica", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def solver_flags(p):
        p.add_argument("--eps", type=_rational, default=_rational("1/1099511627776"),
                       help="minimum box width (default 2^-40)")
        p.add_argument("--depth", type=int, default=60, help="maximum subdivision depth")

    p = sub.add_parser("analyze", help="certify TSPP of a polynomial")
    p.add_argument("poly", help="expression, file path, or @file")
    p.add_argument("--box", type=_box, default=Box(-10, 10, -10, 10), help="xlo,xhi,ylo,yhi")
    p.add_argument("--out")
    solver_flags(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("patchwork", help="build the patchworking polynomial")
    p.add_argument("poly")
    p.add_argument("--lifting", required=True, help="CSV file with rows i,j,lambda")
    p.add_argument("--t", type=_rational, action="append", help="specialize at t (repeatable)")
    p.add_argument("--out", help="write the induced subdivision as JSON")
    p.set_defaults(func=cmd_patchwork)

    p = sub.add_parser("plot", help="SVG of the H, E1, E2 curves")
    p.add_argument("poly")
    p.add_argument("--window", type=_box, default=Box(-3, 3, -3, 3))
    p.add_argument("--res", type=int, default=300)
    p.add_argument("--out")
    solver_flags(p)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("reproduce", help="tile counts and glued counts for degree d")
    p.add_argument("d", type=int)
    p.add_argument("--t", type=_rational, action="append", help="parameter value (repeatable)")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (env PARABOLICA_JOBS)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")
    p.add_argument("--plot", metavar="DIR", help="write one SVG per t")
    p.add_argument("--window", type=_box, default=Box(-3, 3, -3, 3))
    p.add_argument("--res", type=int, default=300)
    p.add_argument("--allow-large", action="store_true", help=f"permit d > {MAX_DEGREE}")
    solver_flags(p)
    p.set_defaults(func=cmd_reproduce)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, NonIntegerNormalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
