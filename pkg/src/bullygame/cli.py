"""Command-line entry point: ``bullygame {solve,curves,reproduce,export}``.

Exit codes: 0 success, 2 input or usage error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from importlib.resources import files

from . import reproduce as repro
from .efg import ParseError, format_game, parse_game
from .equilibria import solve
from .game_tree import DEFAULT_TOL, GameError
from .model import build_game, sample_curves
from .report import curves_csv, render_csv, render_json, render_table, write_atomic

log = logging.getLogger("bullygame")

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 2, 3
TOL_ENV = "SOLVER_TOL"


class InputError(Exception):
    pass


def default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise InputError(f"{TOL_ENV}={raw!r} is not a number") from None
    if not tol >= 0:
        raise InputError(f"{TOL_ENV} must be non-negative")
    return tol


def _model_value(text: str) -> float:
    key, sep, value = text.partition("=")
    if key.strip() != "a" or not sep:
        raise argparse.ArgumentTypeError(f"expected a=VALUE, got {text!r}")
    try:
        return float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {value!r}") from None


def read_game_file(path: str):
    """Read a game file from disk, falling back to a shipped asset of the same name."""
    if os.path.exists(path):
        with open(path) as fh:
            text = fh.read()
    else:
        asset = files("bullygame").joinpath("assets", os.path.basename(path))
        if not asset.is_file():
            raise InputError(f"no such file: {path}")
        text = asset.read_text()
    try:
        return parse_game(text)
    except ParseError as e:
        raise InputError(f"{path}: {e}") from None


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        write_atomic(out, text)
    except OSError as e:
        raise InputError(f"cannot write {out}: {e.strerror or e}") from None


def cmd_solve(args) -> int:
    tol = default_tol() if args.tol is None else args.tol
    if tol < 0:
        raise InputError("--tol must be non-negative")
    tree = read_game_file(args.file) if args.file else build_game(args.model).game
    rep = solve(tree, tol)
    if not rep.spne_profiles <= rep.nash:
        log.error("SPNE profiles outside the Nash set: %s", rep.spne_profiles - rep.nash)
        return EXIT_INTERNAL
    render = {"table": render_table, "csv": render_csv, "json": render_json}[args.format]
    _emit(render(rep, args.concept), args.out)
    return EXIT_OK


def cmd_curves(args) -> int:
    curves = sample_curves(args.a, args.samples)
    _emit(curves_csv(curves), args.out)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    tol = default_tol()
    try:
        reports = repro.run(args.case, args.a, tol)
    except ValueError as e:
        raise InputError(str(e)) from None
    sys.stdout.write(repro.render(reports))
    return EXIT_INTERNAL if any(r.failed for r in reports) else EXIT_OK


def export_name(a: float) -> str:
    regime = build_game(a).regime.value
    prefix = "baseline" if regime == "negligible" else regime
    return f"{prefix}_a{a:g}.efg"


def cmd_export(args) -> int:
    model = build_game(args.model)
    out = args.out
    if out is None or os.path.isdir(out):
        out = os.path.join(out or ".", export_name(args.model))
    header = f"# bully game at control level a={args.model:g} ({model.regime.value} regime)\n"
    _emit(header + format_game(model.game), out)
    print(out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bullygame", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="normal form plus Nash / subgame-perfect equilibria")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--file", metavar="PATH", help="EFG-LITE game file (shipped: baseline.efg)")
    src.add_argument("--model", metavar="a=VALUE", type=_model_value, help="built-in game at control level a")
    s.add_argument("--concept", choices=("nash", "spne", "both"), default="both")
    s.add_argument("--tol", type=float, default=None, help=f"tie tolerance (default ${TOL_ENV} or {DEFAULT_TOL:g})")
    s.add_argument("--format", choices=("table", "csv", "json"), default="table")
    s.add_argument("--out", metavar="PATH")
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("curves", help="sample the bully's stage I and III utilities to CSV")
    c.add_argument("--a", type=float, required=True)
    c.add_argument("--samples", type=int, default=101)
    c.add_argument("--out", metavar="PATH")
    c.set_defaults(func=cmd_curves)

    r = sub.add_parser("reproduce", help="recompute the published tables and audit them")
    r.add_argument("--case", choices=repro.CASES + ("all",), default="all")
    r.add_argument("--a", type=float, default=None, help="control level override for the chosen case")
    r.set_defaults(func=cmd_reproduce)

    e = sub.add_parser("export", help="write the built-in game at a control level as EFG-LITE")
    e.add_argument("--model", metavar="a=VALUE", type=_model_value, required=True)
    e.add_argument("--out", metavar="PATH", help="file or directory (default: ./<regime>_a<value>.efg)")
    e.set_defaults(func=cmd_export)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # argparse reports usage errors this way
        return EXIT_INPUT if e.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InputError, GameError) as e:
        print(f"bullygame: error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
