"""Command-line front end.  Output is plain text, one fact per line, and
identical across runs for identical input."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Sequence

from .elements import OutOfRange, evaluate, invert, multiply, reduce
from .homs import SpineNotNormalized, abelianise, in_commutator
from .metrics import (
    CapExceeded,
    DEFAULT_CAP,
    SUBGROUPS,
    ball_rows,
    bfs_ball,
    distortion_report,
    metric_D,
    metric_N,
    read_ball_csv,
    rows_to_csv,
)
from .trees import InvalidMove, TreeParseError, apply_basic_move, format_tree, parse_tree, tree_partition
from .words import WordParseError, check_presentation, normal_form, parse_word, word_to_element
from .ztau import ZTau, ZTauParseError

PARSE_ERRORS = (WordParseError, TreeParseError, ZTauParseError)
DOMAIN_ERRORS = (OutOfRange, InvalidMove, CapExceeded, SpineNotNormalized, ValueError)


class UsageError(Exception):
    pass


class _Failure(Exception):
    """Command ran but the answer is a domain failure (exit 1)."""

    def __init__(self, lines: list[str]):
        self.lines = lines


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit code 2 without argparse printing usage twice
        raise UsageError(message)


def _table(rows: list[list[str]]) -> list[str]:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]


def _nf(args) -> list[str]:
    return [str(normal_form(word_to_element(parse_word(args.word))))]


def _eval(args) -> list[str]:
    g = word_to_element(parse_word(args.word))
    return [str(evaluate(g, ZTau.parse(args.point)))]


def _mul(args) -> list[str]:
    g = word_to_element(parse_word(args.left))
    h = word_to_element(parse_word(args.right))
    return [str(normal_form(reduce(multiply(g, h))))]


def _inv(args) -> list[str]:
    return [str(normal_form(invert(word_to_element(parse_word(args.word)))))]


def _ab(args) -> list[str]:
    return [str(abelianise(parse_word(args.word)))]


def _in_comm(args) -> list[str]:
    g = word_to_element(parse_word(args.word))
    return ["yes" if in_commutator(g) else "no"]


def _metric(args) -> list[str]:
    nf = normal_form(word_to_element(parse_word(args.word)))
    lengths: dict[str, int] = {}
    if args.ball:
        lengths = read_ball_csv(Path(args.ball).read_text())
    elif args.radius is not None:
        lengths = {e.word: e.length for e in bfs_ball(args.radius)}
    exact = lengths.get(str(nf))
    rows = [["D", str(metric_D(nf))], ["N", str(metric_N(nf))]]
    rows.append(["length", "unknown" if exact is None else str(exact)])
    if args.pretty:
        return _table(rows)
    return [f"{k}={v}" for k, v in rows]


def _check_relations(args) -> list[str]:
    report = check_presentation(args.max_index)
    rows = [["ok" if r.holds else "FAIL", r.name, r.lhs, r.rhs] for r in report]
    failed = sum(not r.holds for r in report)
    lines = _table(rows) if args.pretty else ["\t".join(r) for r in rows]
    lines.append(f"{len(report) - failed}/{len(report)} relations hold")
    if failed:
        raise _Failure(lines)
    return lines


def _ball(args) -> list[str]:
    ball = bfs_ball(args.radius, cap=args.cap)
    lines = [f"elements={len(ball)}", "spheres=" + " ".join(map(str, ball.sphere_sizes()))]
    if args.csv:
        Path(args.csv).write_text(rows_to_csv(ball_rows(ball)))
        lines.append(f"csv={args.csv}")
    return lines


def _distortion(args) -> list[str]:
    ambient = bfs_ball(args.ambient_radius) if args.ambient_radius else None
    report = distortion_report(args.subgroup, args.radius, ambient=ambient, cap=args.cap)
    if args.csv:
        Path(args.csv).write_text(report.csv())
    if args.pretty:
        return report.summary_text().splitlines()
    lines = [f"subgroup={report.subgroup}", f"radius={report.radius}", f"elements={len(report.rows)}"]
    for key, rng in report.summary().items():
        lines.append(f"{key}_ratio=" + ("none" if rng is None else f"{rng[0]:.6f},{rng[1]:.6f}"))
    return lines


def _tree_partition(args) -> list[str]:
    return [str(tree_partition(parse_tree(args.tree)))]


def _basic_move(args) -> list[str]:
    path = args.path if args.path not in ("", "-", "root") else ""
    if set(path) - {"L", "R"}:
        raise InvalidMove(f"path must use only L and R, got {args.path!r}")
    return [format_tree(apply_basic_move(parse_tree(args.tree), path))]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ftau", description="Exact tools for the group F_tau.")
    p.add_argument("--pretty", action="store_true", help="aligned human-readable tables")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(fn=fn)
        return sp

    verb("nf", _nf, "normal form of a word").add_argument("word")
    sp = verb("eval", _eval, "image of a point a+b*tau given as 'a,b'")
    sp.add_argument("word")
    sp.add_argument("point")
    sp = verb("mul", _mul, "normal form of a product")
    sp.add_argument("left")
    sp.add_argument("right")
    verb("inv", _inv, "normal form of an inverse").add_argument("word")
    verb("ab", _ab, "abelianisation (c_x1, c_y0, c_z)").add_argument("word")
    verb("in-comm", _in_comm, "membership in the commutator subgroup").add_argument("word")
    sp = verb("metric", _metric, "metric estimates D and N, plus exact length when known")
    sp.add_argument("word")
    sp.add_argument("--ball", help="CSV written by 'ball --csv' to look up exact lengths")
    sp.add_argument("--radius", type=int, help="enumerate a ball of this radius for the exact length")
    sp = verb("check-relations", _check_relations, "verify the presentation relators")
    sp.add_argument("--max-index", type=int, default=8)
    sp = verb("ball", _ball, "breadth-first ball in the word metric")
    sp.add_argument("radius", type=int)
    sp.add_argument("--csv")
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP)
    sp = verb("distortion", _distortion, "distortion table for fx, fy or fz")
    sp.add_argument("subgroup", choices=sorted(SUBGROUPS))
    sp.add_argument("radius", type=int)
    sp.add_argument("--csv")
    sp.add_argument("--cap", type=int, default=8)
    sp.add_argument("--ambient-radius", type=int, default=0)
    verb("tree-partition", _tree_partition, "breakpoints of the subdivision").add_argument("tree")
    sp = verb("basic-move", _basic_move, "apply a basic move at a caret path (L/R string)")
    sp.add_argument("tree")
    sp.add_argument("path")
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return 2
    try:
        lines = args.fn(args)
    except PARSE_ERRORS as exc:
        print(f"parse error: {exc}", file=err)
        return 2
    except _Failure as exc:
        print("\n".join(exc.lines), file=out)
        return 1
    except (*DOMAIN_ERRORS, OSError) as exc:
        print(f"error: {exc}", file=err)
        return 1
    print("\n".join(lines), file=out)
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
