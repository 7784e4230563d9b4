"""Linear q-difference operators ``sum_j P_j(x, u) sigma^j``.

``sigma`` shifts the family index by one and ``x`` acts as ``q^n``, so
``sigma x = q x sigma``. Coefficients are Laurent polynomials in ``x`` and
``u = q^(1/2)`` with exact rational coefficients, stored as
``{(x_exp, u_exp): Fraction}``.

:func:`guess` finds an annihilating operator from series data. The linear
system is solved modulo word-size primes with numpy; the exact solution
is recovered by CRT and rational reconstruction and then checked over the
integers.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .kernels import _primes_below
from .qseries import QSeries
from .ratfun import RatFun, UPoly

__all__ = [
    "QDiffOperator",
    "NoRecursion",
    "InsufficientData",
    "apply_left",
    "apply_right",
    "guess",
    "classical_limit",
    "ratio_check",
    "parse_bipoly",
    "format_bipoly",
    "KNOWN_OPERATORS",
    "known_operator",
]

BiPoly = dict  # {(x_exp, u_exp): Fraction}
Family = Callable[[int], QSeries]


class NoRecursion(ArithmeticError):
    """Only the zero operator fits the data within the given bounds."""


class InsufficientData(ValueError):
    """Too few matched coefficients to determine the unknowns with the guard."""


def _clean(p: Mapping) -> BiPoly:
    return {k: Fraction(v) for k, v in p.items() if v != 0}


def _bi_mul(a: BiPoly, b: BiPoly) -> BiPoly:
    out: dict = {}
    for (i, k), c in a.items():
        for (j, l), d in b.items():
            key = (i + j, k + l)
            out[key] = out.get(key, 0) + c * d
    return _clean(out)


@dataclass(frozen=True)
class QDiffOperator:
    """``sum_{j=0}^{r} P_j(x, u) sigma^(low + j)``.

    ``low`` is the lowest shift; printed operators in backward shifts
    use ``low = -r``. :meth:`forward` moves them to ``low = 0``.
    """

    coeffs: tuple
    low: int = 0

    def __post_init__(self):
        cs = tuple(_clean(p) for p in self.coeffs)
        object.__setattr__(self, "coeffs", cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return all(not p for p in self.coeffs)

    def forward(self) -> "QDiffOperator":
        """Left-multiply by ``sigma^(-low)``: ``P_j(x) -> P_j(q^-low x)``."""
        if self.low == 0:
            return self
        s = -self.low
        cs = tuple({(i, k + 2 * s * i): c for (i, k), c in p.items()} for p in self.coeffs)
        return QDiffOperator(cs, 0)

    def canonical(self) -> "QDiffOperator":
        """Content-free form with monomial content removed and a positive first coefficient.

        Monomials are ordered by ``(j, x-degree, u-degree)``; the first one
        gets a positive sign. Operators are only defined up to units of
        ``Q[x^+-1, u^+-1]``, so this is the form used for comparisons.
        """
        op = self.forward()
        terms = [(j, i, k, c) for j, p in enumerate(op.coeffs) for (i, k), c in p.items()]
        if not terms:
            return op
        # trim zero coefficients at either end of the shift range
        js = sorted({t[0] for t in terms})
        j0, j1 = js[0], js[-1]
        den = reduce(math.lcm, (t[3].denominator for t in terms), 1)
        g = reduce(math.gcd, (int(t[3] * den) for t in terms), 0)
        xm = min(t[1] for t in terms)
        um = min(t[2] for t in terms)
        first = min(terms, key=lambda t: (t[0], t[1], t[2]))
        sgn = 1 if first[3] > 0 else -1
        scale = Fraction(sgn * den, g)
        cs = [dict() for _ in range(j1 - j0 + 1)]
        for j, i, k, c in terms:
            # the sigma^-j0 factor on the right does not change coefficients
            cs[j - j0][(i - xm, k - um)] = c * scale
        return QDiffOperator(tuple(cs), 0)

    def classical(self) -> "QDiffOperator":
        return classical_limit(self)

    def __eq__(self, other):
        if not isinstance(other, QDiffOperator):
            return NotImplemented
        return self.low == other.low and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.low, tuple(tuple(sorted(p.items())) for p in self.coeffs)))

    def degrees(self) -> tuple[int, int]:
        """``(x-span, u-span)`` over all coefficients."""
        keys = [k for p in self.coeffs for k in p]
        if not keys:
            return 0, 0
        xs = [k[0] for k in keys]
        us = [k[1] for k in keys]
        return max(xs) - min(xs), max(us) - min(us)

    def to_text(self) -> str:
        lines = []
        for j, p in enumerate(self.coeffs):
            lines.append(f"sigma^{j + self.low} : {format_bipoly(p)}")
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text: str) -> "QDiffOperator":
        rows: dict[int, BiPoly] = {}
        for line in text.strip().splitlines():
            if not line.strip():
                continue
            head, sep, body = line.partition(":")
            m = re.fullmatch(r"\s*sigma\^\(?(-?\d+)\)?\s*", head)
            if not sep or not m:
                raise ValueError(f"bad operator line: {line!r}")
            j = int(m.group(1))
            if j in rows:
                raise ValueError(f"duplicate shift sigma^{j}")
            rows[j] = parse_bipoly(body)
        if not rows:
            raise ValueError("empty operator")
        lo, hi = min(rows), max(rows)
        return cls(tuple(rows.get(j, {}) for j in range(lo, hi + 1)), lo)

    @classmethod
    def from_polys(cls, polys: Sequence[Mapping], low: int = 0) -> "QDiffOperator":
        return cls(tuple(dict(p) for p in polys), low)


# ---------------------------------------------------------------------------
# text format for bivariate polynomials

_MONO_RE = re.compile(r"\s*([xqu])\s*(?:\^\s*(?:\(\s*([+-]?\d+(?:/\d+)?)\s*\)|([+-]?\d+)))?\s*$")


def _split_sum(s: str) -> list[str]:
    terms, cur, prev = [], "", ""
    for ch in s:
        if ch in "+-" and cur.strip() and prev not in "^*/(":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
        if not ch.isspace():
            prev = ch
    if cur.strip():
        terms.append(cur)
    return terms


def parse_bipoly(text: str) -> BiPoly:
    """Parse an expanded polynomial in ``x`` and ``q`` (or ``u``).

    Terms are products like ``-3*x^2*q^(3/2)``; ``q`` exponents may be
    halves.
    """
    out: dict = {}
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    if s == "0":
        return {}
    for term in _split_sum(s):
        t = term.replace(" ", "")
        sign = 1
        while t and t[0] in "+-":
            sign = -sign if t[0] == "-" else sign
            t = t[1:]
        if not t:
            raise ValueError(f"dangling sign in {text!r}")
        coef = Fraction(sign)
        xe = ue = Fraction(0)
        for f in t.split("*"):
            if not f:
                raise ValueError(f"empty factor in {text!r}")
            if re.fullmatch(r"\d+(/\d+)?", f):
                coef *= Fraction(f)
                continue
            m = _MONO_RE.match(f)
            if not m:
                raise ValueError(f"cannot parse factor {f!r} in {text!r}")
            e = Fraction(m.group(2) or m.group(3) or 1)
            if m.group(1) == "x":
                xe += e
            elif m.group(1) == "q":
                ue += 2 * e
            else:
                ue += e
        if xe.denominator != 1 or ue.denominator != 1:
            raise ValueError(f"fractional exponent in {text!r}")
        key = (int(xe), int(ue))
        out[key] = out.get(key, 0) + coef
    return _clean(out)


def format_bipoly(p: Mapping) -> str:
    """Inverse of :func:`parse_bipoly`; monomials sorted by x- then u-degree."""
    if not p:
        return "0"
    parts = []
    for (i, k), c in sorted(p.items()):
        fs = []
        if i:
            fs.append("x" if i == 1 else f"x^{i}")
        if k:
            if k % 2:
                fs.append(f"q^({k}/2)")
            else:
                fs.append("q" if k == 2 else f"q^{k // 2}")
        a = abs(c)
        if not fs:
            body = str(a)
        else:
            body = "*".join(([str(a)] if a != 1 else []) + fs)
        parts.append(("-" if c < 0 else "+", body))
    s = " ".join(f"{sg} {b}" for sg, b in parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


# ---------------------------------------------------------------------------
# application


def _eval_coeff(p: BiPoly, xu: int, flip: bool) -> QSeries:
    """``P(u^xu, u)`` (or with ``u -> 1/u`` in the explicit u-powers) as an exact series."""
    terms: dict[int, Fraction] = {}
    for (i, k), c in p.items():
        e = i * xu + (-k if flip else k)
        terms[e] = terms.get(e, 0) + c
    return UPoly.from_dict(terms).to_series()


def _apply(op: QDiffOperator, family: Family, n: int, flip: bool) -> QSeries:
    acc = QSeries.zero()
    xu = -2 * n if flip else 2 * n
    for j, p in enumerate(op.coeffs):
        if not p:
            continue
        acc = acc + _eval_coeff(p, xu, flip) * family(n + op.low + j)
    return acc


def apply_left(op: QDiffOperator, family: Family, n: int) -> QSeries:
    """``sum_j P_j(q^n, q) f(n + j)``."""
    return _apply(op, family, n, False)


def apply_right(op: QDiffOperator, family: Family, np_: int) -> QSeries:
    """``sum_j P_j(q^-n', q^-1) f(n' + j)``: the action on the column index."""
    return _apply(op, family, np_, True)


# ---------------------------------------------------------------------------
# classical limit and ratios


def classical_limit(op: QDiffOperator) -> QDiffOperator:
    """Set ``u = 1`` in every coefficient."""
    cs = []
    for p in op.coeffs:
        d: dict = {}
        for (i, _), c in p.items():
            d[(i, 0)] = d.get((i, 0), 0) + c
        cs.append(d)
    return QDiffOperator(tuple(cs), op.low)


def _x_poly(p: BiPoly) -> UPoly:
    if any(k for _, k in p):
        raise ValueError("coefficient depends on q; take the classical limit first")
    return UPoly.from_dict({i: c for (i, _), c in p.items()})


def ratio_check(a: QDiffOperator, b: QDiffOperator) -> RatFun | None:
    """``f(x)`` with ``a = f(x) b``, or ``None`` if there is none.

    Both operators must be free of ``q`` (classical limits). The result
    is a rational function in ``x``, stored in the same univariate type
    used for ``u``.
    """
    if a.low != b.low or a.order != b.order:
        return None
    pa = [_x_poly(p) for p in a.coeffs]
    pb = [_x_poly(p) for p in b.coeffs]
    ref = next((j for j, p in enumerate(pb) if not p.is_zero()), None)
    if ref is None or pa[ref].is_zero():
        return None
    f = RatFun(pa[ref], pb[ref])
    for x, y in zip(pa, pb):
        if x.is_zero() != y.is_zero():
            return None
        if not x.is_zero() and x * f.den != f.num * y:
            return None
    return f


# ---------------------------------------------------------------------------
# guessing

_GUESS_PRIMES = _primes_below(1 << 31, 64)


def _layout(order: int, xdeg: int, ud: int) -> list[tuple[int, int, int]]:
    return [(j, i, k) for j in range(order + 1) for i in range(xdeg + 1) for k in range(ud + 1)]


def _rows(samples: Mapping[int, Sequence[QSeries]], layout, xdeg: int, ud: int):
    """Integer equation rows, one per known coefficient of each sample."""
    rows: list[list[int]] = []
    for n, fs in samples.items():
        vals = [f.valuation for f in fs if not f.is_zero()]
        if not vals:
            continue
        lo = min(vals) + min(0, 2 * n * xdeg)
        truncs = [f.trunc for f in fs if f.trunc is not None]
        if truncs:
            hi = min(truncs) + min(0, 2 * n * xdeg)
        else:
            # exact data: every coefficient is known, zero past the top degree
            hi = max(f.degree for f in fs if not f.is_zero()) + max(0, 2 * n * xdeg) + ud + 1
        for e in range(lo, hi):
            row = []
            for j, i, k in layout:
                row.append(fs[j][e - 2 * n * i - k])
            if any(row):
                den = reduce(math.lcm, (Fraction(c).denominator for c in row), 1)
                rows.append([int(c * den) for c in row])
    return rows


def _echelon_mod(M: np.ndarray, p: int) -> tuple[list[int], np.ndarray]:
    """Row echelon form mod ``p`` (in place); returns pivot columns and the pivot rows."""
    nr, nc = M.shape
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        nzr = np.nonzero(M[r:, c])[0]
        if nzr.size == 0:
            continue
        pr = r + int(nzr[0])
        if pr != r:
            M[[r, pr]] = M[[pr, r]]
        inv = pow(int(M[r, c]), p - 2, p)
        M[r, c:] = (M[r, c:] * inv) % p
        below = r + 1 + np.nonzero(M[r + 1:, c])[0]
        if below.size:
            M[below, c:] = (M[below, c:] - np.outer(M[below, c], M[r, c:]) % p) % p
        pivots.append(c)
        r += 1
    return pivots, M[:r]


def _kernel_vector_mod(pivots: list[int], R: np.ndarray, free_col: int, p: int) -> list[int]:
    """Kernel vector with 1 at ``free_col`` and 0 at the other free columns."""
    ncols = R.shape[1]
    v = [0] * ncols
    v[free_col] = 1
    for ri in range(len(pivots) - 1, -1, -1):
        c = pivots[ri]
        row = R[ri]
        acc = 0
        for cc in range(c + 1, ncols):
            if v[cc] and row[cc]:
                acc += int(row[cc]) * v[cc]
        v[c] = (-acc) % p
    return v


def _ratrec(a: int, m: int) -> Fraction | None:
    """Rational reconstruction of ``a mod m`` with both parts below ``sqrt(m/2)``."""
    bound = math.isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        qt = r0 // r1
        r0, r1 = r1, r0 - qt * r1
        s0, s1 = s1, s0 - qt * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _as_array(rows: list[list[int]]):
    """int64 array when every entry fits, else an object array."""
    big = max((abs(c) for r in rows for c in r), default=0)
    return np.array(rows, dtype=np.int64 if big < (1 << 62) else object)


def _solve_mod(rows: list[list[int]], ncols: int) -> tuple[list[Fraction] | None, int]:
    """Kernel vector of the integer system by multi-modular elimination.

    The vector is normalized to 1 at the first free column (0 at the
    others). Returns ``(None, 0)`` when the kernel is trivial.
    """
    base = _as_array(rows)
    free_col = None
    nullity = 0
    vals: list[int] = []
    m = 1
    last = None
    for p in _GUESS_PRIMES:
        A = (base % p).astype(np.int64)
        pivots, R = _echelon_mod(A, p)
        piv = set(pivots)
        free = [c for c in range(ncols) if c not in piv]
        if not free:
            return None, 0
        if free_col is None or len(free) < nullity:
            # first prime, or the earlier primes lost rank: start over
            free_col, nullity = free[0], len(free)
            vals, m, last = [0] * ncols, 1, None
        elif len(free) > nullity or free[0] != free_col:
            continue
        v = _kernel_vector_mod(pivots, R, free_col, p)
        # incremental CRT
        inv = pow(m % p, -1, p)
        vals = [x + m * (((y - x) * inv) % p) for x, y in zip(vals, v)]
        m *= p
        cand = [_ratrec(x, m) for x in vals]
        if any(c is None for c in cand):
            continue
        if cand == last:
            return cand, nullity
        last = cand
    raise ArithmeticError("modular solve did not stabilise; increase the prime pool")


def _residual_mod(rows: list[list[int]], v: Sequence[int], p: int) -> bool:
    """Whether ``rows . v == 0 (mod p)`` for every row; entries of ``v`` are below ``p < 2^31``."""
    A = _as_array(rows)
    A = (A % p).astype(np.int64)
    w = np.asarray(v, dtype=np.int64)
    lo, hi = w & 0xFFFF, w >> 16
    # split v so that the int64 dot products cannot overflow
    acc = ((A @ lo) % p + ((A @ hi) % p) * (1 << 16)) % p
    return not acc.any()


def _subset_kernel_ok(sub: list[list[int]], rows: list[list[int]], ncols: int) -> bool:
    """One-prime test that the kernel of ``sub`` also annihilates ``rows``."""
    p = _GUESS_PRIMES[0]
    pivots, R = _echelon_mod((_as_array(sub) % p).astype(np.int64), p)
    piv = set(pivots)
    free = [c for c in range(ncols) if c not in piv]
    if not free:
        return True
    return _residual_mod(rows, _kernel_vector_mod(pivots, R, free[0], p), p)


def _solve(rows: list[list[int]], ncols: int, spare: int) -> list[Fraction] | None:
    """A rational kernel vector, checked exactly against every row.

    The modular solve runs first on an evenly spread subset of
    ``ncols + spare`` rows. A one-prime check against all rows catches a
    subset whose kernel is spurious; the full system is solved then.
    """
    if not rows:
        return None
    keep = ncols + spare
    if len(rows) > keep:
        step = len(rows) / keep
        sub = [rows[int(i * step)] for i in range(keep)]
        if _subset_kernel_ok(sub, rows, ncols):
            vec, _ = _solve_mod(sub, ncols)
            if vec is None:
                return None
            if _exact_null(rows, vec):
                return vec
    vec, _ = _solve_mod(rows, ncols)
    if vec is not None and not _exact_null(rows, vec):
        raise ArithmeticError("modular kernel vector fails the exact check")
    return vec


def _exact_null(rows: list[list[int]], v: Sequence[Fraction]) -> bool:
    den = reduce(math.lcm, (c.denominator for c in v), 1)
    w = [int(c * den) for c in v]
    return all(sum(a * b for a, b in zip(r, w) if a and b) == 0 for r in rows)


def _operator_from(vec, layout, order: int) -> QDiffOperator:
    cs: list[dict] = [dict() for _ in range(order + 1)]
    for (j, i, k), c in zip(layout, vec):
        if c:
            cs[j][(i, k)] = c
    return QDiffOperator(tuple(cs)).canonical()


def _try(samples, order, xdeg, ud, guard):
    layout = _layout(order, xdeg, ud)
    rows = _rows({n: fs[: order + 1] for n, fs in samples.items()}, layout, xdeg, ud)
    if len(rows) < len(layout) + guard:
        raise InsufficientData(
            f"{len(rows)} equations for {len(layout)} unknowns (guard {guard}) at "
            f"order {order}, xdeg {xdeg}, udeg {ud}"
        )
    vec = _solve(rows, len(layout), 2 * guard)
    if vec is None:
        return None
    return _operator_from(vec, layout, order)


def guess(family: Family, order: int, xdeg: int, udeg: int, n_range: Iterable[int],
          guard: int = 30, verify: int = 3) -> QDiffOperator:
    """Find an annihilator of ``family`` by exact linear algebra.

    The search visits ``(order, xdeg, udeg)`` in lexicographic order and
    returns the first nonzero solution in canonical form. ``udeg`` is in
    q-units and bounds the spread of q-powers in each coefficient, so up
    to ``2*udeg + 1`` u-powers are allowed. Before returning, the operator
    is checked on ``verify`` indices beyond ``n_range``.

    Raises
    ------
    NoRecursion
        If no nonzero operator exists within the bounds.
    InsufficientData
        If the data cannot determine the unknowns with ``guard`` spare equations.
    """
    ns = sorted(set(n_range))
    if not ns:
        raise ValueError("empty n_range")
    cache: dict[int, QSeries] = {}

    def f(n):
        if n not in cache:
            cache[n] = family(n)
        return cache[n]

    samples = {n: [f(n + j) for j in range(order + 1)] for n in ns}
    umax = 2 * udeg

    def first_true(lo: int, hi: int, test) -> tuple[int, QDiffOperator]:
        # solutions persist as a bound grows, so bisect for the smallest
        best = test(hi)
        while lo < hi:
            mid = (lo + hi) // 2
            got = test(mid)
            if got is None:
                lo = mid + 1
            else:
                hi, best = mid, got
        return hi, best

    for o in range(1, order + 1):
        if _try(samples, o, xdeg, umax, guard) is None:
            continue
        xd, _ = first_true(0, xdeg, lambda d: _try(samples, o, d, umax, guard))
        _, best = first_true(0, umax, lambda d: _try(samples, o, xd, d, guard))
        for n in range(ns[-1] + 1, ns[-1] + 1 + verify):
            r = apply_left(best, f, n)
            if not r.is_zero():
                raise NoRecursion(
                    f"operator found on n in {ns[0]}..{ns[-1]} fails at n={n} "
                    f"(order u^{r.valuation})"
                )
        return best
    raise NoRecursion(f"no operator of order <= {order}, x-degree <= {xdeg}, q-spread <= {udeg}")


# printed operators, expanded; "5_2" is in backward shifts as printed,
# including its repeated terms
KNOWN_OPERATORS = {
    '4_1': (
        "sigma^0 : -x^2*q^2 + x^4*q^5\n"
        "sigma^1 : -q^(1/2) + x*q^(3/2) + x^2*q^(3/2) + x^2*q^(5/2) + x^2*q^(7/2)"
        " - x^4*q^(7/2) - x^4*q^(9/2) - x^4*q^(11/2) - x^5*q^(11/2) + x^6*q^(13/2)\n"
        "sigma^2 : -x^2*q^3 + x^4*q^4\n"
    ),
    '4_1:O1': (
        "sigma^0 : -x^2*q^(3/2) - x^3*q^(5/2) + x^5*q^(11/2) + x^6*q^(15/2)\n"
        "sigma^1 : -1 - x + x*q + x^2*q + x^2*q^2 + x^2*q^3 + x^3*q + x^3*q^2 + x^3*q^3"
        " + x^3*q^5 - x^5*q^3 - x^5*q^4 - x^5*q^5 - x^5*q^7 - x^6*q^5 - x^6*q^6"
        " - x^6*q^7 + x^7*q^6 - x^7*q^7 + x^8*q^8\n"
        "sigma^2 : -x^2*q^(7/2) - x^3*q^(7/2) + x^5*q^(9/2) + x^6*q^(11/2)\n"
    ),
    '4_1:O2': (
        "sigma^0 : -x^2*q^(3/2) + x^4*q^(11/2)\n"
        "sigma^1 : -1 + x*q + x^2*q^2 + x^2*q^3 + x^2*q^4 - x^4*q^5 - x^4*q^6 - x^4*q^7"
        " - x^5*q^7 + x^6*q^9\n"
        "sigma^2 : -x^2*q^(7/2) + x^4*q^(11/2)\n"
    ),
    '5_2': (
        "sigma^-3 : x^-5*q^(11/2) - x^-3*q^(7/2) - x^-3*q^(9/2) + x^-1*q^(5/2)\n"
        "sigma^-2 : x^-5*q^5 - 2*x^-4*q^3 - x^-3 - x^-3*q - x^-3*q^3 - x^-3*q^4"
        " + x^-2*q^-2 + x^-2*q^-1 - x^-2 + x^-2*q + 2*x^-2*q^2 + x^-1*q^-4 + x^-1*q^-2"
        " + 2*x^-1*q^-1 + x^-1 + x^-1*q^2 - q^-6 + q^-5 - 2*q^-3 - q^-2 + q^-1 - 1"
        " - x*q^-6 - x*q^-5 - x*q^-3 - x*q^-2 + x^2*q^-8 + x^2*q^-7 - x^2*q^-6"
        " + x^2*q^-4 + x^3*q^-7 - x^4*q^-9\n"
        "sigma^-1 : x^-3*q^(3/2) - x^-2*q^(1/2) - x^-1*q^(-7/2) - x^-1*q^(-5/2)"
        " + x^-1*q^(-3/2) - x^-1*q^(1/2) + q^(-9/2) + q^(-7/2) + q^(-3/2) + q^(-1/2)"
        " + x*q^(-15/2) - x*q^(-13/2) + 2*x*q^(-9/2) + x*q^(-7/2) - x*q^(-5/2)"
        " + x*q^(-3/2) - x^2*q^(-17/2) - x^2*q^(-13/2) - 2*x^2*q^(-11/2) - x^2*q^(-9/2)"
        " - x^2*q^(-5/2) - x^3*q^(-19/2) - x^3*q^(-17/2) + x^3*q^(-15/2)"
        " - x^3*q^(-13/2) - 2*x^3*q^(-11/2) + x^4*q^(-21/2) + x^4*q^(-19/2)"
        " + x^4*q^(-15/2) + x^4*q^(-13/2) + 2*x^5*q^(-21/2) - x^6*q^(-23/2)\n"
        "sigma^0 : -x^2*q^-2 + x^4*q^-7 + x^4*q^-6 - x^6*q^-11\n"
    ),
}


def known_operator(name: str) -> QDiffOperator:
    """A printed operator by name: ``4_1``, ``4_1:O1``, ``4_1:O2`` or ``5_2``."""
    try:
        return QDiffOperator.from_text(KNOWN_OPERATORS[name])
    except KeyError:
        raise KeyError(f"no operator {name!r}; known: {sorted(KNOWN_OPERATORS)}") from None
