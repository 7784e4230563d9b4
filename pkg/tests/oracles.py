"""Independent reference computations used by the tests.

Everything here is deliberately naive: sympy parsing of printed formulas and
direct summation with :class:`fractions.Fraction`, sharing no code with the
package beyond the container types.
"""
from __future__ import annotations

from fractions import Fraction

import sympy as sp

from desc3d.qseries import QSeries
from desc3d.ratfun import RatFun, UPoly

u = sp.Symbol("u", positive=True)
x = sp.Symbol("x")
_OFFSET = 1000


def _expr(text: str):
    return sp.sympify(text.replace("^", "**"), locals={"q": u**2, "x": x})


def _upoly(p) -> UPoly:
    poly = sp.Poly(sp.expand(p * u**_OFFSET), u)
    return UPoly.from_dict({k - _OFFSET: Fraction(int(c.p), int(c.q)) for (k,), c in poly.terms()})


def ratfun(text: str) -> RatFun:
    """A printed rational function of ``q^(1/2)`` as a :class:`RatFun`."""
    num, den = sp.fraction(sp.together(_expr(text)))
    return RatFun(_upoly(num), _upoly(den))


def laurent(text: str) -> UPoly:
    """A printed Laurent polynomial in ``q^(1/2)``."""
    f = ratfun(text)
    assert f.den == UPoly.monomial(0), text
    return f.num


def series(text: str, trunc: int) -> QSeries:
    """A printed truncated series ``text + O(u^trunc)``."""
    p = laurent(text)
    return QSeries(p.val, p.coeffs, trunc)


def bipoly(text: str) -> dict[tuple[int, int], Fraction]:
    """A printed polynomial in ``x`` and ``q^(1/2)`` as ``{(xexp, uexp): coeff}``."""
    e = sp.expand(_expr(text) * u**_OFFSET * x**_OFFSET)
    out = {}
    for (a, b), c in sp.Poly(e, x, u).terms():
        out[(a - _OFFSET, b - _OFFSET)] = Fraction(int(c.p), int(c.q))
    return out


def xpoly(text: str) -> UPoly:
    """A printed polynomial in ``x`` as a :class:`UPoly` in ``x``."""
    poly = sp.Poly(sp.expand(_expr(text)), x)
    return UPoly.from_dict({k: Fraction(int(c.p), int(c.q)) for (k,), c in poly.terms()})


# ---------------------------------------------------------------------------
# direct q-series sums with exact fractions, in u-units


def _mul(a: dict, b: dict, trunc: int) -> dict:
    out: dict = {}
    for i, x_ in a.items():
        for j, y in b.items():
            if i + j < trunc:
                out[i + j] = out.get(i + j, 0) + x_ * y
    return {k: v for k, v in out.items() if v}


def _inv_poch(n: int, trunc: int) -> dict:
    """``1/(q;q)_n`` as a power series in u."""
    out = {0: 1}
    for j in range(1, n + 1):
        geo = {2 * j * k: 1 for k in range((trunc + 2 * j - 1) // (2 * j))}
        out = _mul(out, geo, trunc)
    return out


def tet_index_direct(m: int, e: int, trunc: int, terms: int = 40) -> QSeries:
    """``sum_n (-1)^n q^(n(n+1)/2 - (n+e/2)m) / ((q;q)_n (q;q)_{n+e})`` summed over ``n < terms``."""
    total: dict = {}
    for n in range(max(0, -e), terms):
        shift = n * (n + 1) - (2 * n + e) * m  # u-units
        if shift >= trunc:
            continue
        t = trunc - shift
        term = _mul(_inv_poch(n, t), _inv_poch(n + e, t), t)
        sgn = -1 if n % 2 else 1
        for k, v in term.items():
            total[k + shift] = total.get(k + shift, 0) + sgn * v
    return QSeries.from_dict(total, trunc)


def block_41_h0_direct(n: int, trunc: int, terms: int = 40) -> QSeries:
    """``(-1)^n q^(|n|(2|n|+1)/2) sum_k (-1)^k q^(k(k+1)/2+|n|k) / ((q;q)_k (q;q)_{k+2|n|})``."""
    a = abs(n)
    pre = a * (2 * a + 1)  # u-units
    total: dict = {}
    for k in range(terms):
        shift = pre + k * (k + 1) + 2 * a * k
        if shift >= trunc:
            continue
        t = trunc - shift
        term = _mul(_inv_poch(k, t), _inv_poch(k + 2 * a, t), t)
        for e, v in term.items():
            total[e + shift] = total.get(e + shift, 0) + (-1 if (k + n) % 2 else 1) * v
    return QSeries.from_dict(total, trunc)
