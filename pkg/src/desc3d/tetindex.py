"""The tetrahedron index and its degree.

The index is summed directly from its q-hypergeometric definition,

    I(m, e) = sum_{n >= max(0, -e)} (-1)^n q^(n(n+1)/2 - (n + e/2) m)
              / ((q;q)_n (q;q)_{n+e}),

with exponents kept in u-units, ``u = q^(1/2)``. Results are memoized per
``(m, e)`` at the largest truncation requested so far.
"""
from __future__ import annotations

import threading

from .qseries import QSeries

__all__ = ["tet_index", "tet_degree", "tet_coeffs", "clear_cache"]


def tet_degree(m: int, e: int) -> int:
    """Twice the degree ``delta(m, e)``, i.e. the valuation in u-units."""
    mp = m if m > 0 else 0
    mm = -m if m < 0 else 0
    ep = e if e > 0 else 0
    em = -e if e < 0 else 0
    s = m + e
    sp = s if s > 0 else 0
    sm = -s if s < 0 else 0
    return mp * sp + mm * ep + em * sm + max(0, m, -e)


def _divide_one_minus(y: list[int], a: int) -> None:
    # in place: y <- y / (1 - q^a), q-units
    for t in range(a, len(y)):
        y[t] += y[t - a]


def _direct(m: int, e: int, trunc: int) -> list[int]:
    """Coefficients of ``u^0 .. u^(trunc-1)`` (trunc > 0); entries below the valuation are 0."""
    out = [0] * trunc
    n0 = -e if e < 0 else 0
    # u-exponent of the n-th term: n(n+1) - (2n+e)m; it is convex in n
    def ex(n):
        return n * (n + 1) - (2 * n + e) * m

    # first n with the exponent increasing from there on
    n_min = max(n0, m)
    lo = min(ex(n) for n in range(n0, n_min + 1))
    if lo >= trunc:
        return out
    qlen = (trunc - lo + 1) // 2
    y = [0] * qlen
    y[0] = 1
    for a in range(1, n0 + 1):
        _divide_one_minus(y, a)
    for a in range(1, n0 + e + 1):
        _divide_one_minus(y, a)
    n = n0
    while True:
        x = ex(n)
        if x >= trunc and n >= n_min:
            break
        if x < trunc:
            sign = -1 if n & 1 else 1
            top = min(qlen, (trunc - x + 1) // 2)
            for i in range(top):
                c = y[i]
                if c:
                    out[x + 2 * i] += sign * c
        n += 1
        _divide_one_minus(y, n)
        if n + e > 0:
            _divide_one_minus(y, n + e)
    return out


class _Memo:
    def __init__(self):
        self.lock = threading.Lock()
        self.data: dict[tuple[int, int], tuple[int, list[int]]] = {}

    def get(self, m: int, e: int, trunc: int) -> list[int]:
        key = (m, e)
        hit = self.data.get(key)
        if hit is not None and hit[0] >= trunc:
            return hit[1]
        want = trunc if hit is None else max(trunc, hit[0] + hit[0] // 2)
        coeffs = _direct(m, e, want)
        with self.lock:
            cur = self.data.get(key)
            if cur is None or cur[0] < want:
                self.data[key] = (want, coeffs)
        return coeffs


_memo = _Memo()


def clear_cache() -> None:
    with _memo.lock:
        _memo.data.clear()


def tet_coeffs(m: int, e: int, trunc: int) -> list[int]:
    """Integer coefficients of ``u^0 .. u^(trunc-1)`` of ``I(m, e)``.

    The returned list may be longer than ``trunc`` (it is shared with the
    memo and must not be mutated).
    """
    if trunc <= 0:
        return []
    return _memo.get(m, e, trunc)


def tet_index(m: int, e: int, trunc: int) -> QSeries:
    """The tetrahedron index ``I(m, e)`` modulo ``O(u^trunc)``.

    Examples
    --------
    >>> str(tet_index(1, 0, 8))
    '-q - q^2 + O(q^4)'
    """
    if trunc <= 0:
        return QSeries.zero(trunc)
    cs = tet_coeffs(m, e, trunc)
    return QSeries(0, cs[:trunc], trunc)
