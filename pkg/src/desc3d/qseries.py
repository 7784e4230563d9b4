"""Truncated Laurent series in ``u = q^(1/2)`` with exact rational coefficients.

A :class:`QSeries` stores a valuation, a dense coefficient tuple and an
exclusive truncation order: the series is known modulo ``O(u^trunc)``.
Exact (finite) Laurent polynomials are represented with ``trunc=None``;
they behave as series known to infinite order, which is convenient for
monomial prefactors and q-Pochhammer polynomials.

Coefficients are Python ``int`` whenever they are integral and
:class:`fractions.Fraction` otherwise.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

__all__ = [
    "QSeries",
    "ZeroLeadingTerm",
    "add",
    "mul",
    "invert",
    "monomial_shift",
    "convolve",
]


class ZeroLeadingTerm(ArithmeticError):
    """Raised when inverting a series that vanishes to its truncation."""


def _norm(x):
    if type(x) is int:
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else x
    raise TypeError(f"coefficient {x!r} is not an exact rational")


# ---------------------------------------------------------------------------
# coefficient-list kernels

_KS_THRESHOLD = 24


def _pack(a: Sequence[int], nb: int) -> int:
    pos = b"".join((x if x > 0 else 0).to_bytes(nb, "little") for x in a)
    neg = b"".join((-x if x < 0 else 0).to_bytes(nb, "little") for x in a)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack(c: int, nb: int, count: int) -> list[int]:
    width = 8 * nb
    off = int.from_bytes((b"\x00" * (nb - 1) + b"\x80") * count, "little")
    raw = ((c + off) & ((1 << (width * count)) - 1)).to_bytes(nb * count, "little")
    half = 1 << (width - 1)
    return [int.from_bytes(raw[i * nb:(i + 1) * nb], "little") - half for i in range(count)]


def _ks_mul(a: Sequence[int], b: Sequence[int], length: int) -> list[int]:
    """Truncated integer convolution by Kronecker substitution."""
    ba = max(abs(x) for x in a).bit_length()
    bb = max(abs(x) for x in b).bit_length()
    if ba == 0 or bb == 0:
        return [0] * length
    bits = ba + bb + min(len(a), len(b)).bit_length() + 2
    nb = (bits + 7) // 8
    c = _pack(a, nb) * _pack(b, nb)
    count = min(length, len(a) + len(b) - 1)
    out = _unpack(c, nb, count)
    out.extend([0] * (length - count))
    return out


def _naive_mul(a: Sequence, b: Sequence, length: int) -> list:
    out = [0] * length
    for i, x in enumerate(a):
        if not x or i >= length:
            continue
        top = min(len(b), length - i)
        for j in range(top):
            y = b[j]
            if y:
                out[i + j] += x * y
    return out


def _common_denominator(a: Sequence) -> int:
    dens = [x.denominator for x in a if type(x) is not int]
    return math.lcm(*dens) if dens else 1


def convolve(a: Sequence, b: Sequence, length: int) -> list:
    """Return the first ``length`` coefficients of the product of ``a`` and ``b``."""
    a = list(a[:length])
    b = list(b[:length])
    if not a or not b or length <= 0:
        return [0] * max(length, 0)
    da = _common_denominator(a)
    db = _common_denominator(b)
    if any(type(x) is not int for x in a):
        a = [int(x * da) for x in a]
    if any(type(x) is not int for x in b):
        b = [int(x * db) for x in b]
    if min(len(a), len(b)) < _KS_THRESHOLD:
        out = _naive_mul(a, b, length)
    else:
        out = _ks_mul(a, b, length)
    d = da * db
    if d != 1:
        out = [_norm(Fraction(x, d)) for x in out]
    return out


def _inverse_coeffs(c: Sequence, length: int) -> list:
    """Power-series inverse of ``c`` (``c[0] != 0``) to ``length`` terms by Newton iteration."""
    b = [_norm(Fraction(1) / c[0]) if c[0] not in (1, -1) else c[0]]
    k = 1
    while k < length:
        k2 = min(2 * k, length)
        cb = convolve(c[:k2], b, k2)
        d = cb[k:k2]
        if any(d):
            corr = convolve(b, d, k2 - k)
            b = b + [-x for x in corr]
        else:
            b = b + [0] * (k2 - k)
        k = k2
    return b


# ---------------------------------------------------------------------------


class QSeries:
    """A truncated Laurent series ``sum c_i u^(val+i) + O(u^trunc)``.

    Parameters
    ----------
    val : int
        Exponent of ``u`` attached to ``coeffs[0]``.
    coeffs : iterable of rationals
        Dense coefficients. For a truncated series entries at or beyond
        ``trunc`` are dropped and missing ones are zero.
    trunc : int or None
        Exclusive truncation order in u-units; ``None`` marks an exact
        Laurent polynomial.
    """

    __slots__ = ("val", "coeffs", "trunc")

    def __init__(self, val: int, coeffs: Iterable = (), trunc: int | None = None):
        cs = [_norm(x) for x in coeffs]
        val = int(val)
        if trunc is not None:
            trunc = int(trunc)
            if trunc < val:
                val, cs = trunc, []
            n = trunc - val
            if len(cs) > n:
                del cs[n:]
        i = 0
        while i < len(cs) and cs[i] == 0:
            i += 1
        if i:
            val += i
            cs = cs[i:]
        if trunc is None:
            while cs and cs[-1] == 0:
                cs.pop()
            if not cs:
                val = 0
        else:
            if not cs:
                val = trunc
            else:
                cs.extend([0] * (trunc - val - len(cs)))
        self.val = val
        self.coeffs = tuple(cs)
        self.trunc = trunc

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, trunc: int | None = None) -> "QSeries":
        return cls(0 if trunc is None else trunc, (), trunc)

    @classmethod
    def one(cls) -> "QSeries":
        return cls(0, (1,))

    @classmethod
    def monomial(cls, exp: int, coeff=1) -> "QSeries":
        """Exact monomial ``coeff * u^exp``."""
        return cls(exp, (coeff,))

    @classmethod
    def from_dict(cls, terms: dict, trunc: int | None = None) -> "QSeries":
        terms = {int(k): v for k, v in terms.items() if v}
        if trunc is not None:
            terms = {k: v for k, v in terms.items() if k < trunc}
        if not terms:
            return cls.zero(trunc)
        lo, hi = min(terms), max(terms)
        cs = [0] * (hi - lo + 1)
        for k, v in terms.items():
            cs[k - lo] = v
        return cls(lo, cs, trunc)

    @classmethod
    def from_q(cls, terms: dict, trunc_q=None) -> "QSeries":
        """Build from a mapping of q-exponents (int or Fraction) to coefficients."""
        d = {}
        for e, c in terms.items():
            e2 = Fraction(e) * 2
            if e2.denominator != 1:
                raise ValueError(f"q-exponent {e} is not a half-integer")
            d[int(e2)] = c
        t = None if trunc_q is None else int(Fraction(trunc_q) * 2)
        return cls.from_dict(d, t)

    # -- inspection ---------------------------------------------------------
    @property
    def is_exact(self) -> bool:
        return self.trunc is None

    def is_zero(self) -> bool:
        """True if every known coefficient vanishes."""
        return not self.coeffs

    @property
    def valuation(self) -> int:
        return self.val

    def leading(self):
        return self.coeffs[0] if self.coeffs else 0

    @property
    def degree(self) -> int:
        """Largest exponent with a stored coefficient (exact series only)."""
        if self.trunc is not None:
            raise ValueError("degree is defined for exact series only")
        return self.val + len(self.coeffs) - 1

    def __getitem__(self, e: int):
        if self.trunc is not None and e >= self.trunc:
            raise IndexError(f"coefficient of u^{e} is beyond the truncation u^{self.trunc}")
        i = e - self.val
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    coefficient = __getitem__

    def items(self):
        """Yield ``(exponent, coefficient)`` for nonzero stored terms."""
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.val + i, c

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self.coeffs)

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "QSeries":
        if isinstance(x, QSeries):
            return x
        if isinstance(x, (int, Fraction, Rational)):
            return QSeries(0, (x,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        trunc = _min_trunc(self.trunc, other.trunc)
        if not other.coeffs:
            return self if trunc == self.trunc else QSeries(self.val, self.coeffs, trunc)
        if not self.coeffs:
            return other if trunc == other.trunc else QSeries(other.val, other.coeffs, trunc)
        lo = min(self.val, other.val)
        hi = max(self.val + len(self.coeffs), other.val + len(other.coeffs))
        if trunc is not None:
            hi = min(hi, trunc)
        if hi <= lo:
            return QSeries.zero(trunc)
        cs = [0] * (hi - lo)
        for src in (self, other):
            off = src.val - lo
            for i, c in enumerate(src.coeffs):
                if off + i >= hi - lo:
                    break
                cs[off + i] += c
        return QSeries(lo, cs, trunc)

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.val, [-c for c in self.coeffs], self.trunc)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QSeries":
        c = _norm(c)
        if c == 0:
            return QSeries.zero(self.trunc)
        return QSeries(self.val, [c * x for x in self.coeffs], self.trunc)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self, other
        if (a.trunc is None and not a.coeffs) or (b.trunc is None and not b.coeffs):
            return QSeries.zero()
        ta = None if a.trunc is None else a.trunc + b.val
        tb = None if b.trunc is None else b.trunc + a.val
        trunc = _min_trunc(ta, tb)
        if not a.coeffs or not b.coeffs:
            return QSeries.zero(trunc)
        val = a.val + b.val
        if trunc is None:
            length = len(a.coeffs) + len(b.coeffs) - 1
        else:
            length = trunc - val
            if length <= 0:
                return QSeries.zero(trunc)
        return QSeries(val, convolve(a.coeffs, b.coeffs, length), trunc)

    __rmul__ = __mul__

    def invert(self, trunc: int | None = None) -> "QSeries":
        """Multiplicative inverse.

        The result keeps the relative precision of ``self``. An exact
        non-monomial input has an infinite inverse, so ``trunc`` must be
        given; a supplied ``trunc`` also caps the result.
        """
        if not self.coeffs:
            raise ZeroLeadingTerm("series vanishes to its truncation")
        v = self.val
        if self.trunc is None:
            if len(self.coeffs) == 1:
                res = QSeries(-v, (_norm(Fraction(1) / self.coeffs[0]),))
                return res if trunc is None else res.truncate(trunc)
            if trunc is None:
                raise ValueError("inverse of an exact polynomial needs an explicit truncation")
            rel = trunc + v
            out_trunc = trunc
        else:
            rel = self.trunc - v
            out_trunc = self.trunc - 2 * v
            if trunc is not None and trunc < out_trunc:
                out_trunc = trunc
                rel = trunc + v
        if rel <= 0:
            return QSeries.zero(out_trunc)
        cs = list(self.coeffs[:rel])
        cs.extend([0] * (rel - len(cs)))
        return QSeries(-v, _inverse_coeffs(cs, rel), out_trunc)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.trunc is None and len(other.coeffs) > 1 and self.trunc is not None:
            t = self.trunc - (self.val if self.coeffs else 0) - other.val
            return self * other.invert(t)
        return self * other.invert()

    def __pow__(self, k: int):
        if k < 0:
            return self.invert() ** (-k)
        res = QSeries.one()
        base = self
        while k:
            if k & 1:
                res = res * base
            k >>= 1
            if k:
                base = base * base
        return res

    def shift(self, halfpower: int, sign_exponent: int = 0) -> "QSeries":
        """Multiply by ``(-1)^sign_exponent * u^halfpower``."""
        t = None if self.trunc is None else self.trunc + halfpower
        cs = self.coeffs if sign_exponent % 2 == 0 else [-c for c in self.coeffs]
        return QSeries(self.val + halfpower, cs, t) if self.coeffs else QSeries.zero(t)

    def truncate(self, trunc: int) -> "QSeries":
        t = _min_trunc(self.trunc, trunc)
        if t == self.trunc:
            return self
        return QSeries(self.val, self.coeffs, t)

    def subs_inverse(self) -> "QSeries":
        """``u -> 1/u`` for an exact Laurent polynomial."""
        if self.trunc is not None:
            raise ValueError("u -> 1/u is only defined here for exact series")
        if not self.coeffs:
            return self
        return QSeries(-self.degree, self.coeffs[::-1])

    def at_one(self):
        """Sum of coefficients (the value at ``u = 1``) of an exact series."""
        if self.trunc is not None:
            raise ValueError("evaluation at u=1 needs an exact series")
        return _norm(sum(self.coeffs))

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, QSeries):
            other = self._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return (self.val, self.coeffs, self.trunc) == (other.val, other.coeffs, other.trunc)

    def __hash__(self):
        return hash((self.val, self.coeffs, self.trunc))

    def first_mismatch(self, other: "QSeries") -> int | None:
        """Smallest exponent below the common truncation where the series differ."""
        d = self - other
        return d.val if d.coeffs else None

    def agrees(self, other: "QSeries") -> bool:
        return self.first_mismatch(other) is None

    # -- text ---------------------------------------------------------------
    def to_text(self) -> str:
        """Serialize as ``trunc <N>`` followed by ``<u-exp> <num>/<den>`` lines."""
        lines = ["trunc " + ("exact" if self.trunc is None else str(self.trunc))]
        for e, c in self.items():
            c = Fraction(c)
            lines.append(f"{e} {c.numerator}/{c.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "QSeries":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if not lines or not lines[0].startswith("trunc"):
            raise ValueError("missing 'trunc' header")
        head = lines[0].split()
        if len(head) != 2:
            raise ValueError(f"bad header {lines[0]!r}")
        trunc = None if head[1] == "exact" else int(head[1])
        terms = {}
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise ValueError(f"bad term line {ln!r}")
            e = int(parts[0])
            if e in terms:
                raise ValueError(f"duplicate exponent {e}")
            terms[e] = Fraction(parts[1])
        return cls.from_dict(terms, trunc)

    def __repr__(self):
        return f"QSeries({format_q(self)})"

    __str__ = lambda self: format_q(self)


def _min_trunc(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a if a < b else b


def _qexp(e: int) -> str:
    if e % 2 == 0:
        k = e // 2
        return "q" if k == 1 else f"q^{k}"
    return f"q^({e}/2)"


def format_q(s: QSeries, max_terms: int | None = None) -> str:
    """Human-readable rendering in powers of ``q``."""
    parts = []
    for count, (e, c) in enumerate(s.items()):
        if max_terms is not None and count >= max_terms:
            parts.append("...")
            break
        neg = c < 0
        a = -c if neg else c
        if e == 0:
            body = str(a)
        elif a == 1:
            body = _qexp(e)
        else:
            body = f"{a}*{_qexp(e)}"
        parts.append(("- " if neg else "+ ") + body)
    if s.trunc is not None:
        parts.append(f"+ O({_qexp(s.trunc) if s.trunc else '1'})")
    if not parts:
        return "0"
    text = " ".join(parts)
    if text.startswith("+ "):
        text = text[2:]
    elif text.startswith("- "):
        text = "-" + text[2:]
    return text


# functional aliases -------------------------------------------------------

def add(a: QSeries, b: QSeries) -> QSeries:
    return a + b


def mul(a: QSeries, b: QSeries) -> QSeries:
    return a * b


def invert(a: QSeries, trunc: int | None = None) -> QSeries:
    return a.invert(trunc)


def monomial_shift(a: QSeries, signed_halfpower: int, sign_exponent: int) -> QSeries:
    """Multiply ``a`` by ``(-1)^sign_exponent * u^signed_halfpower``."""
    return a.shift(signed_halfpower, sign_exponent)
