"""Command-line pipeline: relate, check, prove, render, convert.

Exit codes are a scripting contract:
  0 proved / holds, 1 numerically refuted, 2 unknown after saturation,
  3 input error, 4 unsupported .ggb feature.
Machine output (documents, conversions, relations) goes to stdout or --out;
diagnostics and the saturation report go to stderr.
"""

from __future__ import annotations

import argparse
import sys

from .construction import Construction, GoalStatement, to_dsl
from .dsl import DslError, parse_construction, parse_goal
from .engine import SaturationLimits, init_store, query, saturate
from .facts import FactError
from .ggb import GgbError, UnsupportedCommand, export_ggb, import_ggb, sniff_ggb
from .proofdoc import DocumentError, build_document, parse_document, render_html, serialize
from .witness import (DegenerateConstruction, Tolerances, check_conjecture,
                      instantiate, relate)


class _InputError(Exception):
    pass


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as e:
        raise _InputError(f"cannot read {path}: {e.strerror}") from None


def _write_output(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as e:
        raise _InputError(f"cannot write {path}: {e.strerror}") from None


def _load_construction(path: str) -> Construction:
    data = _read_input(path)
    if sniff_ggb(data):
        return import_ggb(data)
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        raise _InputError(f"{path}: neither a .ggb archive nor UTF-8 text") from None
    return parse_construction(text)


def _resolve_goal(c: Construction, goal_arg: str | None) -> GoalStatement:
    if goal_arg is not None:
        return parse_goal(goal_arg)
    if c.goal is not None:
        return c.goal
    raise _InputError("no goal: add a goal line to the DSL or pass --goal")


def _tolerances(args: argparse.Namespace) -> Tolerances:
    return Tolerances(samples=args.samples)


def _limits(args: argparse.Namespace) -> SaturationLimits:
    base = SaturationLimits()
    return SaturationLimits(
        max_levels=args.max_level if args.max_level is not None else base.max_levels,
        max_facts=args.max_facts if args.max_facts is not None else base.max_facts,
        time_budget_s=(args.timeout_ms / 1000.0
                       if args.timeout_ms is not None else base.time_budget_s),
    )


def _print_counter_witness(verdict, quiet: bool) -> None:
    if quiet:
        return
    print("refuted: the relation fails on a sampled witness", file=sys.stderr)
    if verdict.witness is not None:
        for p in sorted(verdict.witness.coords):
            x, y = verdict.witness.coords[p]
            print(f"  {p} = ({x!r}, {y!r})", file=sys.stderr)


def _cmd_check(args: argparse.Namespace) -> int:
    c = _load_construction(args.input)
    goal = _resolve_goal(c, args.goal)
    verdict = check_conjecture(c, goal, _tolerances(args), seed=args.seed)
    if verdict.kind == "holds":
        if not args.quiet:
            print(f"holds on {args.samples} witnesses", file=sys.stderr)
        return 0
    if verdict.kind == "refuted":
        _print_counter_witness(verdict, args.quiet)
        return 1
    raise _InputError("construction is numerically degenerate; cannot sample")


def _cmd_prove(args: argparse.Namespace) -> int:
    c = _load_construction(args.input)
    goal = _resolve_goal(c, args.goal)
    tol = _tolerances(args)
    verdict = check_conjecture(c, goal, tol, seed=args.seed)
    if verdict.kind == "refuted":
        _print_counter_witness(verdict, args.quiet)
        return 1
    if verdict.kind == "degenerate":
        raise _InputError("construction is numerically degenerate; cannot sample")
    witness = instantiate(c, args.seed, tol)
    store = init_store(c, witness, tol)
    report = saturate(store, _limits(args))
    if not args.quiet:
        print(report.line(), file=sys.stderr)
    deriv = query(store, goal.to_fact())
    if deriv is None:
        if not args.quiet:
            print("unknown: goal not derived within limits", file=sys.stderr)
        return 2
    doc = build_document(store, report, deriv)
    _write_output(args.out, serialize(doc))
    return 0


def _cmd_relate(args: argparse.Namespace) -> int:
    c = _load_construction(args.input)
    found = relate(c, c.points, _tolerances(args), seed=args.seed)
    for f in found:
        print(f.render())
    return 0


def _cmd_render(args: argparse.Namespace) -> int:
    data = _read_input(args.input)
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        raise _InputError(f"{args.input}: not UTF-8 JSON") from None
    doc = parse_document(text)
    _write_output(args.out, render_html(doc))
    return 0


def _cmd_convert(args: argparse.Namespace) -> int:
    c = _load_construction(args.input)
    if args.to == "dsl":
        _write_output(args.out, to_dsl(c))
        return 0
    if c.goal is not None and not args.quiet:
        print("note: goal lines are not representable in .ggb; dropped",
              file=sys.stderr)
    blob = export_ggb(c)
    if args.out is None or args.out == "-":
        sys.stdout.buffer.write(blob)
    else:
        try:
            with open(args.out, "wb") as fh:
                fh.write(blob)
        except OSError as e:
            raise _InputError(f"cannot write {args.out}: {e.strerror}") from None
    return 0


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="pww",
        description="numeric checking, symbolic proving, and visual proof "
                    "export for planar constructions")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser, goal: bool = False) -> None:
        sp.add_argument("input", help="construction file (.ggb or DSL), - for stdin")
        if goal:
            sp.add_argument("--goal", help="goal relation, e.g. 'coll O G H' "
                                           "(overrides a goal line in the file)")
        sp.add_argument("--seed", type=int, default=0, help="witness RNG seed")
        sp.add_argument("--samples", type=int, default=10,
                        help="number of numeric witnesses")
        sp.add_argument("--quiet", "-q", action="store_true",
                        help="suppress diagnostics")

    sp = sub.add_parser("check", help="test a relation on random witnesses")
    common(sp, goal=True)
    sp.set_defaults(func=_cmd_check)

    sp = sub.add_parser("prove", help="numeric gate, then symbolic proof")
    common(sp, goal=True)
    sp.add_argument("--out", help="proof document path (- for stdout)")
    sp.add_argument("--max-level", type=int, default=None,
                    help="saturation level cap")
    sp.add_argument("--max-facts", type=int, default=None,
                    help="stored fact cap")
    sp.add_argument("--timeout-ms", type=int, default=None,
                    help="saturation time budget in milliseconds")
    sp.set_defaults(func=_cmd_prove)

    sp = sub.add_parser("relate", help="list relations that hold numerically")
    common(sp)
    sp.set_defaults(func=_cmd_relate)

    sp = sub.add_parser("render", help="proof document JSON to HTML bundle")
    sp.add_argument("input", help="pww-1 JSON file, - for stdin")
    sp.add_argument("--out", help="HTML output path (- for stdout)")
    sp.add_argument("--quiet", "-q", action="store_true")
    sp.set_defaults(func=_cmd_render)

    sp = sub.add_parser("convert", help="transcode between DSL and .ggb")
    sp.add_argument("input", help="construction file (.ggb or DSL), - for stdin")
    sp.add_argument("--to", choices=("dsl", "ggb"), required=True,
                    help="target format")
    sp.add_argument("--out", help="output path (- for stdout)")
    sp.add_argument("--quiet", "-q", action="store_true")
    sp.set_defaults(func=_cmd_convert)
    return p


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except UnsupportedCommand as e:
        print(f"error: {e}", file=sys.stderr)
        return 4
    except (DslError, GgbError, FactError, DocumentError,
            DegenerateConstruction, _InputError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
