"""Command-line front end: law fuzzing, face enumeration, composition, SVG.

Subcommands::

    strips-operad check {intervals,strips,trees,sheets} [--seed N] [--cases N]
                  [--max-r N] [--max-n N] [--mutate] [--exhaustive] [--out F]
    strips-operad enumerate R [--format json|dot|svg] [--out F]
    strips-operad compose PLAN.json [--out F] [--svg F]
    strips-operad render INPUT.json [--out F]

Exit codes: 0 success, 1 at least one law failure, 2 usage or validation
error.  The default seed comes from the ``STRIPS_OPERAD_SEED`` environment
variable (0 when unset); identical seeds give byte-identical reports.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import serialize, svg
from .framework import (Block, ChainError, FiberProductError,
                        run_algebra_check, run_operad_check,
                        run_operad_exhaustive, run_rel_check)
from .intervals import interval_compose, interval_violation, intervals_operad
from .shapes import ShapeError
from .sheets import random_pointed_map, sheet_algebra
from .strips import strip_compose, strip_violation, strips_rel_operad
from .trees import enumerate_trees, f_vector, trees_operad

MUTATION_OFFSET = Fraction(1, 1000)


def _default_seed() -> int:
    return int(os.environ.get("STRIPS_OPERAD_SEED", "0"))


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

def cmd_check(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    mut = MUTATION_OFFSET if args.mutate else None
    if args.target == "intervals":
        report = run_operad_check(intervals_operad(mutation=mut), seed=seed,
                                  cases=args.cases, max_arity=args.max_r)
    elif args.target == "trees":
        op = trees_operad(mutation=args.mutate)
        if args.exhaustive:
            report = run_operad_exhaustive(op, max_arity=args.max_r, seed=seed)
        else:
            report = run_operad_check(op, seed=seed, cases=args.cases,
                                      max_arity=args.max_r)
    elif args.target == "strips":
        report = run_rel_check(strips_rel_operad(mutation=mut), seed=seed,
                               cases=args.cases, max_r=args.max_r,
                               max_total=args.max_n)
    else:  # sheets
        def make_algebra(rng):
            dim_in = rng.randint(0, 2)
            dim_out = rng.randint(1, 2) if args.mutate else rng.randint(0, 2)
            return sheet_algebra(random_pointed_map(rng, dim_in, dim_out),
                                 mutation=mut)

        report = run_algebra_check(make_algebra, strips_rel_operad(), seed=seed,
                                   cases=args.cases, max_r=args.max_r,
                                   max_total=args.max_n, name="sheets")
    _emit(report.json_bytes().decode(), args.out)
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------
# enumerate
# ---------------------------------------------------------------------------

def cmd_enumerate(args) -> int:
    r = args.r
    if not 2 <= r <= 8:
        print(f"error: leaf count {r} out of range 2..8", file=sys.stderr)
        return 2
    if args.format in ("dot", "svg") and r > 5:
        print(f"error: the face poset rendering is limited to 5 leaves, got {r}",
              file=sys.stderr)
        return 2
    if args.format == "dot":
        _emit(svg.hasse_dot(r), args.out)
    elif args.format == "svg":
        _emit(svg.hasse_svg(r), args.out)
    else:
        trees = enumerate_trees(r)
        payload = {"leaves": r,
                   "f_vector": list(f_vector(r)),
                   "total": len(trees),
                   "trees": [serialize.tree_to_json(t) for t in trees]}
        _emit(serialize.dumps(payload), args.out)
    return 0


# ---------------------------------------------------------------------------
# compose
# ---------------------------------------------------------------------------

def _resolve(node, basedir: Path):
    """Follow {"$file": path} indirections anywhere in a plan document.

    Paths are relative to the directory of the top-level plan file."""
    if isinstance(node, dict):
        if "$file" in node:
            raw = json.loads((basedir / node["$file"]).read_text())
            return _resolve(raw, basedir)
        return {k: _resolve(v, basedir) for k, v in node.items()}
    if isinstance(node, list):
        return [_resolve(v, basedir) for v in node]
    return node


def cmd_compose(args) -> int:
    plan_path = Path(args.plan)
    plan = _resolve(json.loads(plan_path.read_text()), plan_path.parent)
    kind = plan.get("kind")
    if kind == "intervals":
        outer = serialize.intervals_from_json(plan["outer"])
        inners = [serialize.intervals_from_json(n) for n in plan["inners"]]
        for label, config in [("outer", outer)] + [
                (f"inner {k + 1}", c) for k, c in enumerate(inners)]:
            bad = interval_violation(config)
            if bad is not None:
                print(f"error: {label}: {bad}", file=sys.stderr)
                return 2
        result = interval_compose(outer, inners)
        payload = serialize.intervals_to_json(result)
    elif kind == "strips":
        outer = serialize.strip_from_json(plan["outer"])
        blocks = []
        for blk in plan["blocks"]:
            base = serialize.intervals_from_json(blk["base"])
            configs = tuple(serialize.strip_from_json(c)
                            for c in blk.get("configs", []))
            blocks.append(Block(base, configs))
        bad = strip_violation(outer)
        if bad is not None:
            print(f"error: outer: {bad}", file=sys.stderr)
            return 2
        for i, blk in enumerate(blocks):
            bad = interval_violation(blk.base)
            if bad is not None:
                print(f"error: block {i + 1} base: {bad}", file=sys.stderr)
                return 2
            for a, config in enumerate(blk.configs):
                bad = strip_violation(config)
                if bad is not None:
                    print(f"error: block {i + 1} configuration {a + 1}: {bad}",
                          file=sys.stderr)
                    return 2
        result = strip_compose(outer, blocks)
        bad = strip_violation(result)
        if bad is not None:
            print(f"error: composed result: {bad}", file=sys.stderr)
            return 2
        payload = serialize.strip_to_json(result)
    else:
        print(f"error: unknown plan kind {kind!r} (expected intervals or strips)",
              file=sys.stderr)
        return 2
    _emit(serialize.dumps(payload), args.out)
    if args.svg:
        Path(args.svg).write_text(svg.render_before_after(outer, result))
    return 0


# ---------------------------------------------------------------------------
# render
# ---------------------------------------------------------------------------

def cmd_render(args) -> int:
    payload = json.loads(Path(args.input).read_text())
    if "embeddings" in payload:
        picture = svg.render_intervals(serialize.intervals_from_json(payload))
    elif "shape" in payload:
        picture = svg.render_strip_config(serialize.strip_from_json(payload))
    elif "sheet" in payload:
        picture = svg.render_sheet_element(serialize.sheet_element_from_json(payload))
    elif "x_breaks" in payload:
        picture = svg.render_sheet(serialize.sheet_from_json(payload))
    else:
        print("error: unrecognized input document", file=sys.stderr)
        return 2
    _emit(picture, args.out)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strips-operad",
        description="Exact operad law checking, enumeration, and rendering.")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="fuzz the laws of one instance")
    check.add_argument("target",
                       choices=("intervals", "strips", "trees", "sheets"))
    check.add_argument("--seed", type=int, default=None,
                       help="default: $STRIPS_OPERAD_SEED or 0")
    check.add_argument("--cases", type=int, default=100)
    check.add_argument("--max-r", "--max-arity", dest="max_r", type=int,
                       default=3, help="arity bound")
    check.add_argument("--max-n", dest="max_n", type=int, default=5,
                       help="total rectangle bound for strips/sheets")
    check.add_argument("--mutate", action="store_true",
                       help="corrupt the composition; the run must fail")
    check.add_argument("--exhaustive", action="store_true",
                       help="trees only: all plans up to the arity bound")
    check.add_argument("--format", choices=("json",), default="json")
    check.add_argument("--out", default=None, help="report path (default stdout)")
    check.set_defaults(func=cmd_check)

    enum = sub.add_parser("enumerate", help="faces of one associahedron")
    enum.add_argument("r", type=int, help="leaf count, 2..8")
    enum.add_argument("--format", choices=("json", "dot", "svg"),
                      default="json")
    enum.add_argument("--out", default=None)
    enum.set_defaults(func=cmd_enumerate)

    comp = sub.add_parser("compose", help="compose configurations from a plan file")
    comp.add_argument("plan", help="JSON plan document")
    comp.add_argument("--out", default=None)
    comp.add_argument("--svg", default=None,
                      help="write a before/after rendering here")
    comp.set_defaults(func=cmd_compose)

    rend = sub.add_parser("render", help="SVG for a JSON value")
    rend.add_argument("input")
    rend.add_argument("--out", default=None)
    rend.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, TypeError, KeyError, ShapeError, ChainError,
            FiberProductError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
