"""Lattice-sum kernels: compiled multi-modular core with a pure-Python fallback.

The backend is chosen at import. Setting ``DESC3D_PURE=1`` in the
environment forces the fallback; :func:`set_backend` switches at runtime
(used by tests and the benchmark). Both backends return identical exact
integers.
"""
from __future__ import annotations

import math
import os
import threading

import numpy as np

from .qseries import QSeries, convolve
from .tetindex import tet_coeffs, tet_degree

try:  # pragma: no cover - exercised implicitly when the extension is built
    from . import _ckernel
except ImportError:  # pragma: no cover
    _ckernel = None

__all__ = ["lattice_sum", "backend", "set_backend", "available_backends", "PRIMES"]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primes_below(top: int, count: int) -> list[int]:
    out = []
    n = top - 1
    while len(out) < count:
        if _is_prime(n):
            out.append(n)
        n -= 2 if n % 2 else 1
    return out


PRIMES = _primes_below(1 << 60, 8)

_local = threading.local()
_backend = "compiled" if (_ckernel is not None and os.environ.get("DESC3D_PURE") != "1") else "python"


def available_backends() -> list[str]:
    return ["compiled", "python"] if _ckernel is not None else ["python"]


def backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in available_backends():
        raise ValueError(f"backend {name!r} unavailable; have {available_backends()}")
    _backend = name


def _table():
    tab = getattr(_local, "table", None)
    if tab is None:
        tab = _ckernel.TetTable(16)
        _local.table = tab
    return tab


def _crt(residues: np.ndarray, primes: list[int]) -> list[int]:
    mod = math.prod(primes)
    basis = []
    for p in primes:
        mp = mod // p
        basis.append(mp * pow(mp, -1, p))
    half = mod // 2
    cols = [row.tolist() for row in residues]
    out = []
    for vals in zip(*cols):
        x = sum(v * b for v, b in zip(vals, basis)) % mod
        out.append(x - mod if x > half else x)
    return out


def _compiled_sum(M, E, shift, sign, trunc):
    tab = _table()
    kp = 2
    while True:
        primes = PRIMES[:kp]
        base, res, bound = _ckernel.lattice_sum(
            tab, M, E, shift, sign, trunc, np.asarray(primes, dtype=np.uint64)
        )
        if bound.size == 0:
            return base, []
        top = float(bound.max())
        if not math.isfinite(top):
            return None
        need = 2 * (top * (1 + 1e-9) + 1)
        if math.prod(primes) > need:
            return base, _crt(res, primes)
        kp = max(kp + 1, math.ceil(math.log2(need) / 59.9) + 1)
        if kp > len(PRIMES):
            return None


def _rel_q(m: int, e: int, lq: int) -> list[int]:
    d = tet_degree(m, e)
    cs = tet_coeffs(m, e, d + 2 * lq)
    return cs[d:d + 2 * lq:2]


def _python_sum(M, E, shift, sign, trunc):
    P, N = M.shape
    vals = shift + sum(
        np.fromiter((tet_degree(int(m), int(e)) for m, e in zip(M[:, j], E[:, j])), dtype=np.int64, count=P)
        for j in range(N)
    ) if P else np.zeros(0, dtype=np.int64)
    if P == 0 or vals.min() >= trunc:
        return trunc, []
    base = int(vals.min())
    acc = [0] * (trunc - base)
    for p in range(P):
        v = int(vals[p])
        if v >= trunc:
            continue
        lq = (trunc - v + 1) // 2
        cur = _rel_q(int(M[p, 0]), int(E[p, 0]), lq)
        for j in range(1, N):
            cur = convolve(cur, _rel_q(int(M[p, j]), int(E[p, j]), lq), lq)
        off = v - base
        if sign[p] < 0:
            for i, c in enumerate(cur):
                acc[off + 2 * i] -= c
        else:
            for i, c in enumerate(cur):
                acc[off + 2 * i] += c
    return base, acc


def lattice_sum(M, E, shift, sign, trunc: int, backend: str | None = None) -> QSeries:
    """``sum_p sign_p u^shift_p prod_j I(M[p,j], E[p,j]) + O(u^trunc)``.

    Parameters
    ----------
    M, E : int64 arrays of shape (P, N)
        Tetrahedron arguments per lattice point.
    shift : int64 array (P,)
        u-exponent of the monomial prefactor of each point.
    sign : int8 array (P,)
        Sign (+1 or -1) of each point.
    trunc : int
        Exclusive truncation order in u-units.
    """
    M = np.ascontiguousarray(M, dtype=np.int64)
    E = np.ascontiguousarray(E, dtype=np.int64)
    shift = np.ascontiguousarray(shift, dtype=np.int64)
    sign = np.ascontiguousarray(sign, dtype=np.int8)
    which = backend or _backend
    out = None
    if which == "compiled" and _ckernel is not None:
        out = _compiled_sum(M, E, shift, sign, trunc)
    if out is None:
        out = _python_sum(M, E, shift, sign, trunc)
    base, coeffs = out
    if not coeffs:
        return QSeries.zero(trunc)
    return QSeries(base, coeffs, trunc)
