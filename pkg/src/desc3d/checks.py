"""Verification suites shared by the ``verify`` command and the test-suite.

Each suite returns a list of :class:`Check` records; a suite passes when
every record does.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .blocks import BLOCK_COUNT, BlockId, block, factorization_check
from .indexsum import rotated_index
from .insertion import (
    Insertion,
    builtin_insertion,
    edge_operator,
    inserted_rotated_index,
    lagrangian_insertion,
)
from .nzdata import builtin_names, builtin_reduced
from .qdiff import apply_left, apply_right, classical_limit, known_operator, ratio_check
from .ratfun import RatFun, UPoly

__all__ = ["Check", "SUITES", "run_suite", "CLASSICAL_RATIOS"]


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


def _zero_check(name: str, s) -> Check:
    if s.is_zero():
        return Check(name, True, f"0 + O(u^{s.trunc})")
    return Check(name, False, f"nonzero at u^{s.valuation}")


def lagrangian(knot: str, trunc: int) -> list[Check]:
    """``z_j^-1 + z''_j - 1`` annihilates ``I(n, n')`` for ``(n, n')`` in ``{0,1}^2``."""
    nz = builtin_reduced(knot)
    out = []
    for j in range(1, nz.N + 1):
        ins = lagrangian_insertion(nz, j)
        for n in (0, 1):
            for np_ in (0, 1):
                s = inserted_rotated_index(nz, ins, n, np_, trunc)
                out.append(_zero_check(f"{knot} lagrangian j={j} ({n},{np_})", s))
    return out


def edges(knot: str, trunc: int) -> list[Check]:
    """``E_i - q`` annihilates ``I(n, n')`` for every edge row."""
    nz = builtin_reduced(knot)
    q = Insertion.one(nz.N, RatFun.monomial(2))
    out = []
    for i in range(1, nz.N):
        ins = edge_operator(nz, i) - q
        for n in (0, 1):
            for np_ in (0, 1):
                s = inserted_rotated_index(nz, ins, n, np_, trunc)
                out.append(_zero_check(f"{knot} edge i={i} ({n},{np_})", s))
    return out


def symmetry(knot: str, trunc: int, r: int = 3) -> list[Check]:
    """``I(n,n') = I(-n,n') = I(n,-n') = I(-n,-n')`` for ``0 <= n, n' <= r``."""
    nz = builtin_reduced(knot)
    out = []
    for n in range(r + 1):
        for np_ in range(r + 1):
            a = rotated_index(nz, n, np_, trunc)
            for x, y in ((-n, np_), (n, -np_), (-n, -np_)):
                if (x, y) == (n, np_):
                    continue
                d = a.first_mismatch(rotated_index(nz, x, y, trunc))
                out.append(Check(f"{knot} I({n},{np_}) = I({x},{y})", d is None,
                                 "" if d is None else f"differs at u^{d}"))
    return out


def factorization(knot: str, trunc: int, r: int = 2) -> list[Check]:
    """Block bilinear form against the lattice sum for ``|n|, |n'| <= r``."""
    if knot not in BLOCK_COUNT:
        return [Check(f"{knot} factorization", False, "no blocks for this knot")]
    out = []
    for n in range(-r, r + 1):
        for np_ in range(-r, r + 1):
            rep = factorization_check(knot, n, np_, trunc)
            out.append(Check(f"{knot} factorization ({n},{np_})", rep.passed,
                             "" if rep.passed else f"differs at u^{rep.mismatch}"))
    return out


_OPERATORS = {"4_1": [("4_1", None), ("4_1:O1", "O1"), ("4_1:O2", "O2")], "5_2": [("5_2", None)]}


def recursion(knot: str, trunc: int, count: int = 4) -> list[Check]:
    """Printed operators annihilate window rows, columns and the blocks."""
    if knot not in _OPERATORS:
        return [Check(f"{knot} recursion", False, "no printed operator for this knot")]
    nz = builtin_reduced(knot)
    out = []
    for name, ins_name in _OPERATORS[knot]:
        op = known_operator(name)
        ins = builtin_insertion(ins_name, knot) if ins_name else None
        cache: dict = {}

        def entry(a, b):
            if (a, b) not in cache:
                cache[(a, b)] = (rotated_index(nz, a, b, trunc) if ins is None
                                 else inserted_rotated_index(nz, ins, a, b, trunc))
            return cache[(a, b)]

        for n in range(count):
            out.append(_zero_check(f"{name} rows n={n}", apply_left(op, lambda m: entry(m, 0), n)))
            if ins is None:
                out.append(_zero_check(f"{name} columns n'={n}",
                                       apply_right(op, lambda m: entry(0, m), n)))
        if ins is None:
            for alpha in range(BLOCK_COUNT[knot]):
                for n in range(6):
                    fam = lambda m, a=alpha: block(BlockId(knot, a, m), False, trunc)
                    out.append(_zero_check(f"{name} block alpha={alpha} n={n}", apply_left(op, fam, n)))
    return out


def _xpoly(coeffs: dict[int, int]) -> UPoly:
    return UPoly.from_dict({e: Fraction(c) for e, c in coeffs.items()})


# classical ratios as stated for the 4_1 insertions
CLASSICAL_RATIOS = {
    # 2 (x^2 - 1)(x^2 + x + 1) = 2x^4 + 2x^3 - 2x - 2
    "4_1:O1": RatFun(_xpoly({4: 2, 3: 2, 1: -2, 0: -2})),
    "4_1:O2": RatFun(_xpoly({2: 1, 0: -1})),
}


def aj(knot: str, trunc: int = 0) -> list[Check]:
    """Classical limits of the inserted operators relative to the plain one."""
    if knot != "4_1":
        return [Check(f"{knot} aj", False, "classical ratios are stated for 4_1 only")]
    base = classical_limit(known_operator("4_1"))
    out = []
    for name, want in CLASSICAL_RATIOS.items():
        got = ratio_check(classical_limit(known_operator(name)), base)
        ok = got is not None and got == want
        shown = "none" if got is None else _show(got)
        out.append(Check(f"{name} classical ratio", ok, f"got {shown}, expected {_show(want)}"))
    return out


def _show(f: RatFun) -> str:
    return f.num.format("x") if f.is_polynomial() and f.den == UPoly.monomial(0) else f.to_text("x")


SUITES = {
    "lagrangian": lagrangian,
    "edges": edges,
    "symmetry": symmetry,
    "factorization": factorization,
    "recursion": recursion,
    "aj": aj,
}


def run_suite(suite: str, knots: list[str] | None, trunc: int) -> list[Check]:
    """Run ``suite`` on ``knots`` (all applicable built-ins when ``None``)."""
    fn = SUITES[suite]
    if knots is None:
        knots = {"factorization": ["4_1", "5_2"], "recursion": ["4_1", "5_2"],
                 "aj": ["4_1"]}.get(suite, builtin_names())
    out: list[Check] = []
    for k in knots:
        out.extend(fn(k, trunc))
    return out
