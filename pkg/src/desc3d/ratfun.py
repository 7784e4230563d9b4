"""Laurent polynomials and rational functions in ``u``, reconstruction, series matrices.

Canonical form of a :class:`RatFun`: the denominator is a polynomial in
``u`` with nonzero constant term and leading coefficient 1, coprime to the
numerator; the numerator is a Laurent polynomial. Since ``u`` is a unit
this form is unique, so equality of canonical forms is equality of
functions.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

from .qseries import QSeries, _norm, convolve

__all__ = [
    "UPoly",
    "RatFun",
    "NoReconstruction",
    "SingularMatrix",
    "ZeroDenominator",
    "series_of",
    "reconstruct",
    "mat_mul",
    "mat_invert_series",
    "mat_det",
    "mat_truncation",
    "ratmat_det",
    "ratmat_series",
    "common_denominator",
    "parse_laurent",
    "parse_ratfun",
    "poly_gcd",
    "reconstruct_auto",
]


class ZeroDenominator(ZeroDivisionError):
    pass


class NoReconstruction(ArithmeticError):
    """No rational function within the degree bounds matches the series."""


class SingularMatrix(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# Laurent polynomials


class UPoly:
    """Laurent polynomial ``sum c_i u^(val+i)`` with exact rational coefficients."""

    __slots__ = ("val", "coeffs")

    def __init__(self, val: int = 0, coeffs: Iterable = ()):
        cs = [_norm(c) for c in coeffs]
        i = 0
        while i < len(cs) and cs[i] == 0:
            i += 1
        while len(cs) > i and cs[-1] == 0:
            cs.pop()
        cs = cs[i:]
        self.val = int(val) + i if cs else 0
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, e: int, c=1) -> "UPoly":
        return cls(e, (c,))

    @classmethod
    def from_dict(cls, d: dict) -> "UPoly":
        d = {int(k): v for k, v in d.items() if v}
        if not d:
            return cls()
        lo, hi = min(d), max(d)
        cs = [0] * (hi - lo + 1)
        for k, v in d.items():
            cs[k - lo] = v
        return cls(lo, cs)

    @classmethod
    def from_series(cls, s: QSeries) -> "UPoly":
        if s.trunc is not None:
            raise ValueError("only exact series convert to UPoly")
        return cls(s.val, s.coeffs)

    def to_series(self) -> QSeries:
        return QSeries(self.val, self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return self.val + len(self.coeffs) - 1 if self.coeffs else -1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def items(self):
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.val + i, c

    def __getitem__(self, e: int):
        i = e - self.val
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        if not isinstance(other, UPoly):
            if isinstance(other, (int, Fraction)):
                other = UPoly(0, (other,))
            else:
                return NotImplemented
        return self.val == other.val and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.val, self.coeffs))

    def __add__(self, other):
        other = _as_upoly(other)
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.val, other.val)
        hi = max(self.degree, other.degree)
        cs = [0] * (hi - lo + 1)
        for p in (self, other):
            for i, c in enumerate(p.coeffs):
                cs[p.val - lo + i] += c
        return UPoly(lo, cs)

    __radd__ = __add__

    def __neg__(self):
        return UPoly(self.val, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_upoly(other))

    def __rsub__(self, other):
        return _as_upoly(other) - self

    def __mul__(self, other):
        other = _as_upoly(other)
        if not self.coeffs or not other.coeffs:
            return UPoly()
        n = len(self.coeffs) + len(other.coeffs) - 1
        return UPoly(self.val + other.val, convolve(self.coeffs, other.coeffs, n))

    __rmul__ = __mul__

    def scale(self, c) -> "UPoly":
        return UPoly(self.val, [c * x for x in self.coeffs])

    def shift(self, e: int) -> "UPoly":
        return UPoly(self.val + e, self.coeffs) if self.coeffs else self

    def __pow__(self, k: int) -> "UPoly":
        r = UPoly.monomial(0)
        for _ in range(k):
            r = r * self
        return r

    def strip(self) -> tuple[int, "UPoly"]:
        """Split off the u-valuation: ``self = u^v * p`` with ``p(0) != 0``."""
        return self.val, UPoly(0, self.coeffs)

    def subs_inverse(self) -> "UPoly":
        """``u -> 1/u``."""
        if not self.coeffs:
            return self
        return UPoly(-self.degree, self.coeffs[::-1])

    def __call__(self, x):
        """Evaluate at a rational point (exact)."""
        x = Fraction(x)
        return _norm(sum(c * x ** (self.val + i) for i, c in enumerate(self.coeffs)))

    def content(self) -> Fraction:
        """Positive rational ``c`` with ``self / c`` integral and primitive."""
        if not self.coeffs:
            return Fraction(1)
        fs = [Fraction(c) for c in self.coeffs]
        den = math.lcm(*(f.denominator for f in fs))
        g = 0
        for f in fs:
            g = math.gcd(g, int(f * den))
        return Fraction(g, den)

    def monic(self) -> "UPoly":
        return self.scale(Fraction(1) / Fraction(self.lc)) if self.coeffs else self

    def format(self, var: str = "q") -> str:
        return _format_terms(list(self.items()), var) or "0"

    __str__ = format

    def __repr__(self):
        return f"UPoly({self.format()})"


def _as_upoly(x) -> UPoly:
    if isinstance(x, UPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return UPoly(0, (x,))
    if isinstance(x, QSeries):
        return UPoly.from_series(x)
    raise TypeError(f"cannot convert {x!r} to UPoly")


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    """Division of ordinary polynomials given as ascending coefficient lists."""
    a = [Fraction(x) for x in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lb = Fraction(b[-1])
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / lb
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    r = a[:db] if db else []
    while r and r[-1] == 0:
        r.pop()
    return q, r


def poly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd of two polynomials with nonzero constant terms (valuations stripped)."""
    x = list(a.strip()[1].coeffs)
    y = list(b.strip()[1].coeffs)
    while y:
        _, r = _poly_divmod(x, y)
        x, y = y, r
    if not x:
        return UPoly(0, (1,))
    return UPoly(0, x).monic()


def _exact_quotient(a: UPoly, b: UPoly) -> UPoly:
    va, pa = a.strip()
    vb, pb = b.strip()
    q, r = _poly_divmod(list(pa.coeffs), list(pb.coeffs))
    if r:
        raise ArithmeticError("inexact polynomial division")
    return UPoly(va - vb, q)


# ---------------------------------------------------------------------------
# rational functions


class RatFun:
    """Rational function ``num/den`` in ``u`` kept in canonical form."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _canonical: bool = False):
        num = _as_upoly(num)
        den = UPoly(0, (1,)) if den is None else _as_upoly(den)
        if _canonical:
            self.num, self.den = num, den
            return
        if den.is_zero():
            raise ZeroDenominator("zero denominator")
        if num.is_zero():
            self.num, self.den = UPoly(), UPoly(0, (1,))
            return
        dv, d0 = den.strip()
        num = num.shift(-dv)
        if len(d0.coeffs) > 1:
            g = poly_gcd(num, d0)
            if g.degree > 0:
                num = _exact_quotient(num, g)
                d0 = _exact_quotient(d0, g)
        lc = Fraction(d0.lc)
        if lc != 1:
            num = num.scale(1 / lc)
            d0 = d0.scale(1 / lc)
        self.num, self.den = num, d0

    @classmethod
    def monomial(cls, e: int, c=1) -> "RatFun":
        return cls(UPoly.monomial(e, c))

    @classmethod
    def const(cls, c) -> "RatFun":
        return cls(UPoly(0, (c,)))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def valuation(self) -> int:
        """u-order of the Laurent expansion at ``u = 0``."""
        if self.is_zero():
            raise ValueError("zero has no valuation")
        return self.num.val - self.den.val

    def __eq__(self, other):
        if not isinstance(other, RatFun):
            try:
                other = RatFun(_as_upoly(other))
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = _as_ratfun(other)
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        return self + (-_as_ratfun(other))

    def __rsub__(self, other):
        return _as_ratfun(other) - self

    def __mul__(self, other):
        other = _as_ratfun(other)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.is_zero():
            raise ZeroDenominator("inverse of zero")
        return RatFun(self.den, self.num)

    def __truediv__(self, other):
        return self * _as_ratfun(other).inverse()

    def __rtruediv__(self, other):
        return _as_ratfun(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        r = RatFun.const(1)
        for _ in range(k):
            r = r * self
        return r

    def subs_inverse(self) -> "RatFun":
        """``u -> 1/u``."""
        return RatFun(self.num.subs_inverse(), self.den.subs_inverse())

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDenominator(f"pole at {x}")
        return _norm(Fraction(self.num(x)) / d)

    def series(self, trunc: int) -> QSeries:
        return series_of(self, trunc)

    def to_text(self, var: str = "q") -> str:
        return f"({self.num.format(var)})/({self.den.format(var)})"

    def __str__(self):
        if self.is_polynomial():
            return self.num.format()
        return self.to_text()

    def __repr__(self):
        return f"RatFun({self.to_text()})"

    @classmethod
    def from_text(cls, text: str) -> "RatFun":
        return parse_ratfun(text)


def _as_ratfun(x) -> RatFun:
    if isinstance(x, RatFun):
        return x
    return RatFun(_as_upoly(x))


def series_of(f: RatFun, trunc: int) -> QSeries:
    """Expand ``f`` as a Laurent series in ``u`` to ``O(u^trunc)``.

    Polynomial ``f`` gives an exact series (further truncated only if
    ``trunc`` is below its degree).
    """
    if f.den.is_zero():
        raise ZeroDenominator("zero denominator")
    num = f.num.to_series()
    if f.is_polynomial():
        return num.truncate(trunc) if num.coeffs and num.degree >= trunc else num
    if f.num.is_zero():
        return QSeries.zero(trunc)
    inv = f.den.to_series().invert(trunc - f.num.val)
    return (num * inv).truncate(trunc)


# ---------------------------------------------------------------------------
# text

_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+(?:/\d+)?)\s*\*?\s*)?
        (?P<var>[qux])?
        (?:\s*\^\s*(?:\(\s*(?P<pexp>-?\d+(?:\s*/\s*\d+)?)\s*\)|(?P<exp>-?\d+)))?
        \s*""",
    re.VERBOSE,
)


def _format_terms(items: Sequence[tuple[int, object]], var: str = "q") -> str:
    out = []
    for e, c in items:
        neg = c < 0
        a = -c if neg else c
        if var == "q":
            if e == 0:
                mono = ""
            elif e % 2 == 0:
                mono = "q" if e == 2 else f"q^{e // 2}"
            else:
                mono = f"q^({e}/2)"
        else:
            mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        out.append(("-" if neg else "+") + body)
    if not out:
        return ""
    s = " ".join(x[0] + " " + x[1:] for x in out)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


def parse_laurent(text: str, var: str | None = None) -> UPoly:
    """Parse a Laurent polynomial written in ``q`` (half-integer powers allowed), ``u`` or ``x``.

    Exponents are returned in u-units for ``q``; for ``u`` and ``x`` they
    are taken literally.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    pos = 0
    terms: dict[int, Fraction] = {}
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at column {pos + 1}: {text!r}")
        if not first and not m.group("sign"):
            raise ValueError(f"missing operator at column {pos + 1}: {text!r}")
        first = False
        sign = -1 if m.group("sign") == "-" else 1
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        v = m.group("var")
        if v is None:
            if m.group("coef") is None or m.group("exp") or m.group("pexp"):
                raise ValueError(f"bad term at column {pos + 1}: {text!r}")
            e = Fraction(0)
        else:
            if var is not None and v != var and not (var == "q" and v == "u"):
                raise ValueError(f"unexpected variable {v!r} in {text!r}")
            raw = m.group("pexp") or m.group("exp") or "1"
            e = Fraction(raw.replace(" ", ""))
            if v == "q":
                e *= 2
        if e.denominator != 1:
            raise ValueError(f"exponent {e} not allowed in {text!r}")
        terms[int(e)] = terms.get(int(e), 0) + sign * coef
        pos = m.end()
    return UPoly.from_dict(terms)


def parse_ratfun(text: str) -> RatFun:
    """Parse ``(num)/(den)``, ``(num)`` or a bare Laurent polynomial in ``q``/``u``."""
    s = text.strip()
    m = re.fullmatch(r"\((.*)\)\s*/\s*\((.*)\)", s, re.S)
    if m and _balanced(m.group(1)) and _balanced(m.group(2)):
        return RatFun(parse_laurent(m.group(1)), parse_laurent(m.group(2)))
    if s.startswith("(") and s.endswith(")") and _balanced(s[1:-1]):
        s = s[1:-1]
    return RatFun(parse_laurent(s))


def _balanced(s: str) -> bool:
    depth = 0
    for ch in s:
        depth += ch == "("
        depth -= ch == ")"
        if depth < 0:
            return False
    return depth == 0


# ---------------------------------------------------------------------------
# reconstruction


def _nullspace_vector(rows: list[list[Fraction]], ncols: int) -> list[Fraction] | None:
    """A nonzero kernel vector of a dense rational matrix, or ``None``."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    # prefer the highest free column: for Padé systems this keeps low degrees
    f = free[0]
    v = [Fraction(0)] * ncols
    v[f] = Fraction(1)
    for i, c in enumerate(pivots):
        v[c] = -m[i][f]
    return v


def reconstruct(s: QSeries, max_num_deg: int, max_den_deg: int, guard: int = 20) -> RatFun:
    """Recover ``p/r`` from the truncated series ``s``.

    Degree bounds are in u-units and refer to ``s`` with its valuation
    factored out. All known coefficients beyond the linear solve, at least
    ``guard`` of them, must match.

    Raises
    ------
    NoReconstruction
        If there are too few coefficients or no solution passes the guard.
    """
    if s.trunc is None:
        return RatFun(UPoly(s.val, s.coeffs))
    if not s.coeffs:
        return RatFun(0)
    known = s.trunc - s.val
    dn, dd = int(max_num_deg), int(max_den_deg)
    if known < dn + dd + guard + 1:
        raise NoReconstruction(
            f"need {dn + dd + guard + 1} known coefficients, series has {known}"
        )
    t = [Fraction(c) for c in s.coeffs]
    if dd == 0:
        r = [Fraction(1)]
    else:
        rows = [[t[i - j] if 0 <= i - j else Fraction(0) for j in range(dd + 1)]
                for i in range(dn + 1, dn + dd + 1)]
        r = _nullspace_vector(rows, dd + 1)
        if r is None:
            raise NoReconstruction("Padé system has only the trivial solution")
    tr = convolve(t, r, known)
    p = tr[:dn + 1]
    if any(tr[dn + 1:]):
        bad = next(i for i in range(dn + 1, known) if tr[i])
        raise NoReconstruction(
            f"mismatch at u^{s.val + bad} for degree bounds ({dn},{dd})"
        )
    return RatFun(UPoly(s.val, p), UPoly(0, r))


def reconstruct_auto(s: QSeries, max_deg: int, guard: int = 20) -> RatFun:
    """Search equal degree bounds ``0, 1, ...`` up to ``max_deg`` (u-units)."""
    last = None
    for d in range(max_deg + 1):
        try:
            return reconstruct(s, d, d, guard)
        except NoReconstruction as exc:
            last = exc
    raise NoReconstruction(str(last))


# ---------------------------------------------------------------------------
# matrices of series


def mat_truncation(M: Sequence[Sequence[QSeries]]):
    ts = [x.trunc for row in M for x in row if x.trunc is not None]
    return min(ts) if ts else None


def _identity(n: int) -> list[list[QSeries]]:
    return [[QSeries.one() if i == j else QSeries.zero() for j in range(n)] for i in range(n)]


def mat_mul(A: Sequence[Sequence[QSeries]], B: Sequence[Sequence[QSeries]]) -> list[list[QSeries]]:
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = QSeries.zero()
            for t in range(k):
                acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(row)
    return out


def _pick_pivot(M, col, start):
    best = None
    for i in range(start, len(M)):
        x = M[i][col]
        if x.coeffs and (best is None or x.val < M[best][col].val):
            best = i
    return best


def mat_invert_series(M: Sequence[Sequence[QSeries]]) -> list[list[QSeries]]:
    """Inverse of a square series matrix by Gauss-Jordan elimination.

    The pivot in each column is the entry of least valuation, so that all
    multipliers have nonnegative valuation relative to the pivot row.
    """
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("matrix must be square")
    A = [list(r) + e for r, e in zip(M, _identity(n))]
    for c in range(n):
        p = _pick_pivot(A, c, c)
        if p is None:
            raise SingularMatrix(f"no invertible pivot in column {c}")
        A[c], A[p] = A[p], A[c]
        inv = A[c][c].invert()
        A[c] = [x * inv for x in A[c]]
        for i in range(n):
            if i == c:
                continue
            f = A[i][c]
            if f.is_exact and not f.coeffs:
                continue
            A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return [r[n:] for r in A]


def mat_det(M: Sequence[Sequence[QSeries]]) -> QSeries:
    """Determinant by elimination with least-valuation pivoting."""
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("matrix must be square")
    A = [list(r) for r in M]
    det = QSeries.one()
    for c in range(n):
        p = _pick_pivot(A, c, c)
        if p is None:
            t = mat_truncation(A)
            return QSeries.zero(t)
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        piv = A[c][c]
        det = det * piv
        inv = piv.invert()
        for i in range(c + 1, n):
            f = A[i][c]
            if f.is_exact and not f.coeffs:
                continue
            g = f * inv
            A[i] = [x - g * y for x, y in zip(A[i], A[c])]
    return det


# ---------------------------------------------------------------------------
# matrices of rational functions


def ratmat_series(Q: Sequence[Sequence[RatFun]], trunc: int) -> list[list[QSeries]]:
    return [[series_of(f, trunc) for f in row] for row in Q]


def ratmat_det(Q: Sequence[Sequence[RatFun]]) -> RatFun:
    """Determinant by cofactor expansion (small matrices)."""
    n = len(Q)
    if n == 1:
        return Q[0][0]
    if n == 2:
        return Q[0][0] * Q[1][1] - Q[0][1] * Q[1][0]
    total = RatFun(0)
    for j in range(n):
        if Q[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in Q[1:]]
        term = Q[0][j] * ratmat_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def common_denominator(Q: Sequence[Sequence[RatFun]]) -> tuple[UPoly, list[list[UPoly]]]:
    """Factor ``Q = (1/d) * P`` with ``d`` the monic lcm of all entry denominators."""
    d = UPoly(0, (1,))
    for row in Q:
        for f in row:
            if f.is_zero() or f.den == d:
                continue
            g = poly_gcd(d, f.den)
            d = _exact_quotient(d * f.den, g)
    return d, [[_exact_quotient(f.num * d, f.den) for f in row] for row in Q]
