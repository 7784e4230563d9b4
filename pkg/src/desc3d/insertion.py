"""Insertions (descendant operators) acting on the index summand.

A Weyl monomial ``c * prod_j z_j^alpha_j (z''_j)^beta_j`` shifts the
tetrahedron arguments by ``(beta_j, -alpha_j)`` and multiplies the summand
by ``q^L`` with

    2 L = sum_j alpha_j m_j + beta_j e_j - alpha_j beta_j,

where ``(m_j, e_j)`` are the unshifted arguments. All exponents are kept
in u-units, so ``2 L`` is always an integer.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .indexsum import _sum_points, rotated_points, summand, summand_args
from .nzdata import NZReduced
from .qseries import QSeries
from .ratfun import RatFun, parse_ratfun, series_of

__all__ = [
    "WeylMonomial",
    "Insertion",
    "inserted_summand",
    "inserted_rotated_index",
    "edge_operator",
    "lagrangian_insertion",
    "builtin_insertion",
    "builtin_insertion_names",
    "parse_insertion",
    "linear_form",
    "HalfPowerViolation",
    "CalibrationFailure",
    "UnknownInsertion",
]


class HalfPowerViolation(ValueError):
    """An exponent vector is not integral."""


class CalibrationFailure(ArithmeticError):
    """No constant prefactor turns an edge monomial into a summand shift."""


class UnknownInsertion(KeyError):
    pass


def _intvec(v: Iterable, N: int, what: str) -> tuple[int, ...]:
    out = []
    for x in v:
        f = Fraction(x)
        if f.denominator != 1:
            raise HalfPowerViolation(f"{what} entry {x} is not an integer")
        out.append(int(f))
    if len(out) != N:
        raise ValueError(f"{what} must have length {N}")
    return tuple(out)


@dataclass(frozen=True)
class WeylMonomial:
    """``coeff * prod_j z_j^alpha_j (z''_j)^beta_j``."""

    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    coeff: RatFun

    def __post_init__(self):
        N = len(self.alpha)
        object.__setattr__(self, "alpha", _intvec(self.alpha, N, "alpha"))
        object.__setattr__(self, "beta", _intvec(self.beta, N, "beta"))
        c = self.coeff if isinstance(self.coeff, RatFun) else RatFun.const(self.coeff)
        object.__setattr__(self, "coeff", c)

    @property
    def key(self) -> tuple:
        return self.alpha, self.beta

    def to_text(self) -> str:
        factors = []
        for j, a in enumerate(self.alpha, 1):
            if a:
                factors.append(f"z{j}" + (f"^{a}" if a != 1 else ""))
        for j, b in enumerate(self.beta, 1):
            if b:
                factors.append(f"z{j}''" + (f"^{b}" if b != 1 else ""))
        c = self.coeff
        if c.is_polynomial():
            text = c.num.format("q")
            if len(list(c.num.items())) > 1:
                text = f"({text})"
        else:
            text = c.to_text()
        if factors and text in ("1", "-1"):
            return ("-" if text == "-1" else "") + "*".join(factors)
        return "*".join([text] + factors)


class Insertion:
    """A finite sum of Weyl monomials with distinct exponent vectors."""

    def __init__(self, terms: Iterable[WeylMonomial] = (), N: int | None = None):
        acc: dict[tuple, RatFun] = {}
        order: list[tuple] = []
        for t in terms:
            if N is None:
                N = len(t.alpha)
            elif len(t.alpha) != N:
                raise ValueError("monomials of different rank")
            if t.key not in acc:
                order.append(t.key)
                acc[t.key] = t.coeff
            else:
                acc[t.key] = acc[t.key] + t.coeff
        self.N = N
        self.terms = tuple(WeylMonomial(a, b, acc[(a, b)]) for a, b in sorted(order) if not acc[(a, b)].is_zero())

    @classmethod
    def monomial(cls, alpha: Sequence[int], beta: Sequence[int] | None = None, coeff=1) -> "Insertion":
        beta = beta if beta is not None else (0,) * len(alpha)
        return cls([WeylMonomial(tuple(alpha), tuple(beta), coeff)])

    @classmethod
    def zero(cls, N: int) -> "Insertion":
        return cls((), N)

    @classmethod
    def one(cls, N: int, coeff=1) -> "Insertion":
        return cls.monomial((0,) * N, (0,) * N, coeff)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Insertion") -> "Insertion":
        return Insertion(self.terms + other.terms, self.N if self.N is not None else other.N)

    def __neg__(self) -> "Insertion":
        return self.scale(-1)

    def __sub__(self, other: "Insertion") -> "Insertion":
        return self + (-other)

    def scale(self, c) -> "Insertion":
        c = c if isinstance(c, RatFun) else RatFun.const(c)
        return Insertion((WeylMonomial(t.alpha, t.beta, t.coeff * c) for t in self.terms), self.N)

    def __eq__(self, other):
        return isinstance(other, Insertion) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def max_shift(self) -> int:
        return max((max(map(abs, t.alpha + t.beta), default=0) for t in self.terms), default=0)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for t in self.terms:
            text = t.to_text()
            if not out:
                out = text
            elif text.startswith("-"):
                out += " - " + text[1:]
            else:
                out += " + " + text
        return out

    def __repr__(self):
        return f"Insertion({self.to_text()})"


# ---------------------------------------------------------------------------
# action on the summand


def linear_form(nz: NZReduced, alpha, beta, k: Sequence[int], n: int, np_: int) -> Fraction:
    """The exponent ``L`` (in q-units) of the insertion prefactor."""
    _, _, shift = summand_args(nz, k, n, np_, alpha, beta)
    _, _, base = summand_args(nz, k, n, np_)
    return Fraction(shift - base, 2)


def inserted_summand(nz: NZReduced, mono: WeylMonomial, k: Sequence[int], n: int, np_: int,
                     trunc: int) -> QSeries:
    """``(mono o S)(k, n, n')`` to ``O(u^trunc)``."""
    c = mono.coeff
    if c.is_zero():
        return QSeries.zero(trunc)
    cv = c.num.val
    s = summand(nz, k, n, np_, trunc - cv, mono.alpha, mono.beta)
    if s.is_zero():
        return QSeries.zero(trunc)
    return (s * series_of(c, trunc - s.valuation)).truncate(trunc)


def _term_index(nz: NZReduced, mono: WeylMonomial, n: int, np_: int, trunc: int, margin: int) -> QSeries:
    c = mono.coeff
    cv = c.num.val
    ps = rotated_points(nz, n, np_, trunc - cv, mono.alpha, mono.beta, margin)
    s = _sum_points(ps, trunc - cv)
    if s.is_zero():
        return QSeries.zero(trunc)
    return (s * series_of(c, trunc - s.valuation)).truncate(trunc)


def inserted_rotated_index(nz: NZReduced, ins: Insertion, n: int, np_: int, trunc: int,
                           margin: int = 2) -> QSeries:
    """``I_O(n, n')``: the rotated index with the insertion applied termwise.

    The enumeration margin is widened by the largest exponent of ``ins``.
    """
    total = QSeries.zero(trunc)
    m = margin + ins.max_shift()
    for mono in ins.terms:
        total = total + _term_index(nz, mono, n, np_, trunc, m)
    return total


# ---------------------------------------------------------------------------
# special insertions


def _l2(nz: NZReduced, alpha, beta, k, n, np_) -> int:
    _, _, shift = summand_args(nz, k, n, np_, alpha, beta)
    _, _, base = summand_args(nz, k, n, np_)
    return shift - base


def edge_operator(nz: NZReduced, i: int) -> Insertion:
    """The edge insertion ``E_i`` with ``(E_i o S)(k) = q S(k - e_i)``.

    The exponents are row ``i`` (1-based, ``1 <= i <= N-1``) of ``A`` and
    ``B``. The prefactor is fixed by requiring the identity exactly; it
    exists because the linear form ``L`` of an edge row does not depend on
    ``k`` or ``n - n'``.

    Raises
    ------
    CalibrationFailure
        If ``L`` depends on ``k`` or on ``n - n'``.
    """
    N = nz.N
    if not 1 <= i <= N - 1:
        raise ValueError(f"edge index must be in 1..{N - 1}")
    alpha = nz.A[i - 1]
    beta = nz.B[i - 1]
    zero = (0,) * N
    l0 = _l2(nz, alpha, beta, zero, 0, 0)
    probes = [(tuple(int(a == b) for b in range(N)), 0, 0) for a in range(N)]
    probes += [(zero, 1, 0), (zero, 0, 1), (zero, 2, -1)]
    for k, n, np_ in probes:
        if _l2(nz, alpha, beta, k, n, np_) != l0:
            raise CalibrationFailure(f"edge {i}: linear form depends on k or n - n'")
    nu = nz.nu[i - 1]
    # c u^l0 (-u)^x = u^2 (-u)^(x - nu)
    c = RatFun.monomial(2 - nu - l0, -1 if nu % 2 else 1)
    return Insertion.monomial(alpha, beta, c)


def lagrangian_insertion(nz: NZReduced, j: int) -> Insertion:
    """``z_j^-1 + z''_j - 1`` for tetrahedron ``j`` (1-based)."""
    N = nz.N
    if not 1 <= j <= N:
        raise ValueError(f"tetrahedron index must be in 1..{N}")
    e = tuple(int(t == j - 1) for t in range(N))
    ne = tuple(-x for x in e)
    zero = (0,) * N
    return Insertion([
        WeylMonomial(ne, zero, 1),
        WeylMonomial(zero, e, 1),
        WeylMonomial(zero, zero, -1),
    ])


# The 4_1 insertions are written in variables (y, z). Matching the
# extracted Q-matrix of O_2 against the printed one fixes y = z_1, z = z_2.
_Y41, _Z41 = 0, 1


def _unit(N: int, j: int, p: int = 1) -> tuple[int, ...]:
    return tuple(p if t == j else 0 for t in range(N))


def _builtins() -> dict[str, Insertion]:
    z2 = (0, 0)
    y_inv = _unit(2, _Y41, -1)
    z_inv = _unit(2, _Z41, -1)
    yz_inv = tuple(a + b for a, b in zip(y_inv, z_inv))
    o1 = Insertion([
        WeylMonomial(y_inv, z2, -1),
        WeylMonomial(z_inv, z2, -1),
        WeylMonomial(yz_inv, z2, 1),
    ])
    o2 = Insertion.monomial(y_inv, z2, 1)
    z3 = (0, 0, 0)
    return {
        "4_1:O1": o1,
        "4_1:O2": o2,
        # labels as printed are "z1" and "z1 + z3"; in this gluing they are
        # z1'' and z1'' + z2, fixed by matching the known Q-matrices
        "5_2:O1": Insertion.monomial(z3, _unit(3, 0)),
        "5_2:O2": Insertion([WeylMonomial(z3, _unit(3, 0), 1), WeylMonomial(_unit(3, 1), z3, 1)]),
        "m237:O": Insertion.monomial(_unit(3, 1), z3),
    }


_INS_ALIASES = {"O": "O1"}


def builtin_insertion_names() -> list[str]:
    return list(_builtins())


def builtin_insertion(name: str, knot: str | None = None) -> Insertion:
    """One of the named insertions: ``4_1:O1``, ``4_1:O2``, ``5_2:O1``, ``5_2:O2``, ``m237:O``.

    ``knot`` may be given separately (``builtin_insertion("O1", "4_1")``).
    """
    from .nzdata import _ALIASES

    table = _builtins()
    if knot is not None and ":" not in name:
        k = _ALIASES.get(knot, knot)
        key = f"{k}:{name}"
        if key not in table:
            key = f"{k}:{_INS_ALIASES.get(name, name)}"
            if key not in table and name in ("O1", "O") and f"{k}:O" in table:
                key = f"{k}:O"
    else:
        key = name
    try:
        return table[key]
    except KeyError:
        raise UnknownInsertion(name) from None


# ---------------------------------------------------------------------------
# text syntax

_FACTOR_RE = re.compile(r"z(\d+)('')?(?:\^\(?([+-]?\d+)\)?)?$")


def _split_terms(s: str) -> list[tuple[str, str]]:
    """Split at top-level binary ``+``/``-``; returns (sign, chunk) pairs."""
    out = []
    depth = 0
    sign = "+"
    cur: list[str] = []
    last = ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and last not in ("^", "*", "/"):
            if "".join(cur).strip():
                out.append((sign, "".join(cur)))
                sign = ch
            else:
                sign = "-" if (sign == "-") != (ch == "-") else "+"
            cur = []
            last = ch
            continue
        cur.append(ch)
        if not ch.isspace():
            last = ch
    out.append((sign, "".join(cur)))
    return out


def _split_factors(s: str) -> list[str]:
    out, cur, depth = [], [], 0
    for ch in s:
        depth += (ch == "(") - (ch == ")")
        if ch == "*" and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def parse_insertion(text: str, N: int) -> Insertion:
    """Parse e.g. ``-1*z1^-1 + 1*z1''^2*z3`` or ``(q^(1/2))/(1 - q)*z2``.

    Factors ``z<j>`` and ``z<j>''`` (1-based) take integer exponents; every
    other factor is a coefficient in the rational-function text syntax.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty insertion")
    if s == "0":
        return Insertion.zero(N)
    terms = []
    for sign, chunk in _split_terms(s):
        chunk = chunk.strip()
        if not chunk:
            raise ValueError(f"empty term in {text!r}")
        alpha = [0] * N
        beta = [0] * N
        coeff = RatFun.const(-1 if sign == "-" else 1)
        for f in _split_factors(chunk):
            f = f.strip()
            m = _FACTOR_RE.fullmatch(f.replace(" ", ""))
            if m:
                j = int(m.group(1))
                if not 1 <= j <= N:
                    raise ValueError(f"tetrahedron index {j} out of range 1..{N}")
                p = int(m.group(3) or 1)
                (beta if m.group(2) else alpha)[j - 1] += p
            else:
                coeff = coeff * parse_ratfun(f)
        terms.append(WeylMonomial(tuple(alpha), tuple(beta), coeff))
    return Insertion(terms, N)
