"""Command-line interface: ``desc3d <command> ...``.

Truncations are given in q-units and doubled internally. Exit codes: 0 on
success, 1 on usage or input errors, 2 when a verification fails or a
computation cannot complete.
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from . import __version__
from .blocks import BlockId, DivergentRewrite, UnsupportedEll, block
from .checks import SUITES, run_suite
from .indexsum import DivergenceGuard, rotated_index, window
from .insertion import (
    HalfPowerViolation,
    UnknownInsertion,
    builtin_insertion,
    inserted_rotated_index,
    parse_insertion,
)
from .nzdata import NZReduced, ParseError, UnknownKnot, builtin_reduced, parse_triangulation, reduce
from .qdiff import InsufficientData, NoRecursion, guess
from .qmatrix import SingularWindow, extract_q
from .qseries import format_q
from .ratfun import NoReconstruction

FORMAT_VERSION = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2 by default; usage errors are 1 here
        self.print_usage(sys.stderr)
        raise UsageError(message)


class Output:
    """Collects named sections and renders them as text or the machine format."""

    def __init__(self, fmt: str, command: str):
        self.fmt = fmt
        self.command = command
        self.sections: list[tuple[str, list[tuple[str, str]]]] = []

    def section(self, name: str, **fields) -> None:
        self.sections.append((name, [(k, str(v)) for k, v in fields.items()]))

    def render(self) -> str:
        if self.fmt == "machine":
            lines = [f"desc3d-output {FORMAT_VERSION}", f"command {self.command}"]
            for name, fields in self.sections:
                lines.append(f"[{name}]")
                for k, v in fields:
                    if "\n" in v:
                        body = v.rstrip("\n").split("\n")
                        lines.append(f"{k} <<{len(body)}")
                        lines.extend(body)
                    else:
                        lines.append(f"{k} = {v}")
            lines.append("[end]")
            return "\n".join(lines) + "\n"
        lines = []
        for name, fields in self.sections:
            d = dict(fields)
            if "text" in d:
                body = d["text"].rstrip("\n")
                lines.append(f"{d['label']} = {body}" if "label" in d else body)
        return "\n".join(lines) + ("\n" if lines else "")


def _knot(spec: str) -> tuple[str, NZReduced]:
    """A built-in name or a path to a triangulation file."""
    try:
        return spec, builtin_reduced(spec)
    except UnknownKnot:
        pass
    if not os.path.exists(spec):
        raise UsageError(f"unknown knot {spec!r} and no such file")
    with open(spec, "rb") as fh:
        data = fh.read()
    return os.path.basename(spec), reduce(parse_triangulation(data))


def _insertion(args, name: str, nz: NZReduced):
    if getattr(args, "builtin", None):
        return builtin_insertion(args.builtin, name)
    if getattr(args, "insertion", None):
        return parse_insertion(args.insertion, nz.N)
    raise UsageError("give an insertion expression or --builtin NAME")


def _u(tq: int) -> int:
    if tq < 0:
        raise UsageError("truncation must be nonnegative")
    return 2 * tq


def _series_section(out: Output, section: str, s, **extra) -> None:
    out.section(section, **extra, text=format_q(s), series=s.to_text())


def cmd_index(args, out: Output) -> int:
    name, nz = _knot(args.knot)
    T = _u(args.trunc)
    if args.window:
        W = window(nz, args.window, T, args.threads)
        for a, row in enumerate(W):
            for b, s in enumerate(row):
                _series_section(out, "entry", s, label=f"I({a},{b})", n=a, np=b,
                                trunc_q=args.trunc)
        return 0
    s = rotated_index(nz, args.n, args.np, T)
    _series_section(out, "index", s, knot=name, n=args.n, np=args.np, trunc_q=args.trunc)
    return 0


def cmd_insert(args, out: Output) -> int:
    name, nz = _knot(args.knot)
    ins = _insertion(args, name, nz)
    T = _u(args.trunc)
    if args.window:
        W = window(nz, args.window, T, args.threads,
                   entry=lambda a, b: inserted_rotated_index(nz, ins, a, b, T))
        for a, row in enumerate(W):
            for b, s in enumerate(row):
                _series_section(out, "entry", s, label=f"I_O({a},{b})", n=a, np=b,
                                trunc_q=args.trunc)
        return 0
    s = inserted_rotated_index(nz, ins, args.n, args.np, T)
    _series_section(out, "inserted", s, knot=name, insertion=ins.to_text(), n=args.n, np=args.np,
                    trunc_q=args.trunc)
    return 0


def cmd_qmatrix(args, out: Output) -> int:
    name, nz = _knot(args.knot)
    ins = _insertion(args, name, nz)
    T = _u(args.trunc)
    Q = extract_q(nz, ins, args.window, T, guard=args.guard, max_deg_q=args.max_deg,
                  threads=args.threads)
    res = "exact" if Q.residual is None else str(Q.residual)
    det = Q.det()
    out.section("qmatrix", knot=name, insertion=ins.to_text(), size=Q.size, trunc_q=args.trunc,
                text=Q.to_text() + f"\ndet = {det}", matrix=Q.to_text(),
                det=det.to_text(), residual_u=res)
    return 0


def _family(args, nz, name, T):
    fam = args.family
    if fam == "block":
        return lambda n: block(BlockId(name, args.alpha, n), args.inverse, T)
    ins = None
    if getattr(args, "builtin", None) or getattr(args, "insertion", None):
        ins = _insertion(args, name, nz)

    def entry(a, b):
        if ins is None:
            return rotated_index(nz, a, b, T)
        return inserted_rotated_index(nz, ins, a, b, T)

    if fam == "row":
        return lambda n: entry(n, args.fixed)
    return lambda n: entry(args.fixed, n)


def cmd_guess(args, out: Output) -> int:
    name, nz = _knot(args.knot)
    T = _u(args.trunc)
    fam = _family(args, nz, name, T)
    lo, hi = args.n_range
    op = guess(fam, args.order, args.xdeg, args.udeg, range(lo, hi + 1), guard=args.guard)
    out.section("operator", knot=name, family=args.family, order=op.order, text=op.to_text(),
                operator=op.to_text())
    return 0


def cmd_blocks(args, out: Output) -> int:
    s = block(BlockId(args.knot, args.alpha, args.n), args.inverse, _u(args.trunc))
    _series_section(out, "block", s, knot=args.knot, alpha=args.alpha, n=args.n,
                    inverse=args.inverse, trunc_q=args.trunc)
    return 0


def cmd_verify(args, out: Output) -> int:
    knots = [args.knot] if args.knot else None
    checks = run_suite(args.suite, knots, _u(args.trunc))
    failed = [c for c in checks if not c.passed]
    lines = [f"{'PASS' if c.passed else 'FAIL'} {c.name}" + (f": {c.detail}" if c.detail else "")
             for c in checks]
    lines.append(f"{len(checks) - len(failed)}/{len(checks)} passed")
    out.section("verify", suite=args.suite, checks=len(checks), failed=len(failed),
                text="\n".join(lines), results="\n".join(lines))
    return 2 if failed else 0


def _add_insertion_args(p) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--insertion", help="expression such as \"-1*z1^-1 + z1''^2*z3\"")
    g.add_argument("--builtin", help="built-in insertion name (O1, O2, O)")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="desc3d", description="Descendant 3D-index computations.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                   help="worker threads (default: available cores)")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("index", help="rotated index I(n, n')")
    s.add_argument("knot", help="built-in name (4_1, 5_2, m237) or triangulation file")
    s.add_argument("n", type=int, nargs="?", default=0)
    s.add_argument("np", type=int, nargs="?", default=0)
    s.add_argument("--trunc", type=int, default=10, help="q-order of the truncation")
    s.add_argument("--window", type=int, help="print the r x r window instead")
    s.set_defaults(func=cmd_index)

    s = sub.add_parser("insert", help="rotated index with an insertion")
    s.add_argument("knot")
    s.add_argument("n", type=int, nargs="?", default=0)
    s.add_argument("np", type=int, nargs="?", default=0)
    s.add_argument("--trunc", type=int, default=10)
    s.add_argument("--window", type=int)
    _add_insertion_args(s)
    s.set_defaults(func=cmd_insert)

    s = sub.add_parser("qmatrix", help="reconstruct the Q-matrix of an insertion")
    s.add_argument("knot")
    s.add_argument("--window", type=int, default=2)
    s.add_argument("--trunc", type=int, default=60)
    s.add_argument("--guard", type=int, default=20)
    s.add_argument("--max-deg", type=int, default=32, help="largest degree bound, q-units")
    _add_insertion_args(s)
    s.set_defaults(func=cmd_qmatrix)

    s = sub.add_parser("guess", help="guess a q-difference operator")
    s.add_argument("knot")
    s.add_argument("--family", choices=("row", "col", "block"), default="row")
    s.add_argument("--fixed", type=int, default=0, help="the fixed index of a row/col family")
    s.add_argument("--alpha", type=int, default=0, help="block color")
    s.add_argument("--inverse", action="store_true", help="blocks at q^-1")
    s.add_argument("--order", type=int, default=2)
    s.add_argument("--xdeg", type=int, default=6)
    s.add_argument("--udeg", type=int, default=6, help="spread of q-powers per coefficient")
    s.add_argument("--n-range", type=int, nargs=2, default=(0, 5), metavar=("LO", "HI"))
    s.add_argument("--trunc", type=int, default=120)
    s.add_argument("--guard", type=int, default=30)
    _add_insertion_args(s)
    s.set_defaults(func=cmd_guess)

    s = sub.add_parser("blocks", help="colored holomorphic blocks")
    s.add_argument("--knot", required=True, choices=("4_1", "5_2"))
    s.add_argument("--alpha", type=int, default=0)
    s.add_argument("--n", type=int, default=0)
    s.add_argument("--inverse", action="store_true")
    s.add_argument("--trunc", type=int, default=10)
    s.set_defaults(func=cmd_blocks)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("--suite", required=True, choices=sorted(SUITES))
    s.add_argument("--knot")
    s.add_argument("--trunc", type=int, default=10)
    s.set_defaults(func=cmd_verify)
    return p


_INPUT_ERRORS = (UsageError, ParseError, UnknownKnot, UnknownInsertion, HalfPowerViolation,
                 ValueError, KeyError)
_COMPUTE_ERRORS = (NoReconstruction, SingularWindow, NoRecursion, InsufficientData,
                   DivergenceGuard, DivergentRewrite, UnsupportedEll)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("a command is required")
        if args.threads < 1:
            raise UsageError("--threads must be positive")
        out = Output(args.format, args.command)
        code = args.func(args, out)
    except _COMPUTE_ERRORS as exc:
        print(f"desc3d: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except _INPUT_ERRORS as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"desc3d: error: {msg}", file=sys.stderr)
        return 1
    sys.stdout.write(out.render())
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
