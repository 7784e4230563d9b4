"""Summands and lattice sums of the rotated and plain 3D-index.

For reduced Neumann-Zagier data the rotated index is

    I(n, n') = sum_{k in Z^N} (-u)^(nu.k - d nu_lambda) u^(k_N (n+n'))
               prod_j I_tet(lampp_j d - b_j.k, -lam_j d + a_j.k),

with ``d = n - n'`` and ``a_j``, ``b_j`` the columns of ``A``, ``B``.
Lattice points are enumerated over L-infinity shells and pruned with the
closed-form valuation; see :func:`enumerate_points`.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .nzdata import NZReduced
from .qseries import QSeries
from .tetindex import tet_degree, tet_index

__all__ = [
    "DivergenceGuard",
    "PointSet",
    "summand",
    "summand_args",
    "summand_valuation",
    "rotated_index",
    "plain_index",
    "rotated_via_plain",
    "window",
    "enumerate_points",
    "default_threads",
]


class DivergenceGuard(RuntimeError):
    """Summand valuations do not grow; the triangulation is likely not 1-efficient."""


def default_threads() -> int:
    try:
        return max(1, len(os.sched_getaffinity(0)))
    except AttributeError:  # pragma: no cover
        return max(1, os.cpu_count() or 1)


def tdeg_array(m: np.ndarray, e: np.ndarray) -> np.ndarray:
    """Vectorized :func:`tet_degree`."""
    z = np.zeros_like(m)
    s = m + e
    return (np.maximum(m, z) * np.maximum(s, z) + np.maximum(-m, z) * np.maximum(e, z)
            + np.maximum(-e, z) * np.maximum(-s, z) + np.maximum(np.maximum(m, -e), z))


# ---------------------------------------------------------------------------
# single summands


def summand_args(nz: NZReduced, k: Sequence[int], n: int, np_: int,
                 alpha: Sequence[int] | None = None, beta: Sequence[int] | None = None):
    """Tetrahedron arguments and monomial data of one (inserted) summand.

    Returns ``(args, x, shift)``: the list of ``(m_j, e_j)``, the sign
    exponent ``x`` and the total u-exponent of the monomial prefactor.
    """
    N = nz.N
    d = n - np_
    alpha = alpha or (0,) * N
    beta = beta or (0,) * N
    args = []
    l2 = 0
    for j in range(N):
        bk = sum(nz.B[i][j] * k[i] for i in range(N))
        ak = sum(nz.A[i][j] * k[i] for i in range(N))
        m = nz.lampp[j] * d - bk
        e = -nz.lam[j] * d + ak
        l2 += alpha[j] * m + beta[j] * e - alpha[j] * beta[j]
        args.append((m + beta[j], e - alpha[j]))
    x = sum(a * b for a, b in zip(nz.nu, k)) - d * nz.nu_lambda
    shift = x + k[N - 1] * (n + np_) + l2
    return args, x, shift


def summand_valuation(nz: NZReduced, k: Sequence[int], n: int, np_: int) -> int:
    """Closed-form u-valuation of the summand (no series are computed)."""
    args, _, shift = summand_args(nz, k, n, np_)
    return shift + sum(tet_degree(m, e) for m, e in args)


def summand(nz: NZReduced, k: Sequence[int], n: int, np_: int, trunc: int,
            alpha: Sequence[int] | None = None, beta: Sequence[int] | None = None) -> QSeries:
    """One summand as a series to ``O(u^trunc)`` (reference path via :func:`tet_index`)."""
    args, x, shift = summand_args(nz, k, n, np_, alpha, beta)
    degs = [tet_degree(m, e) for m, e in args]
    total = shift + sum(degs)
    if total >= trunc:
        return QSeries.zero(trunc)
    out = QSeries.monomial(shift, -1 if x % 2 else 1)
    for (m, e), dg in zip(args, degs):
        # each factor must be known to trunc minus the valuation of the rest
        t = trunc - (total - dg)
        out = out * tet_index(m, e, t)
    return out.truncate(trunc)


# ---------------------------------------------------------------------------
# enumeration


@dataclass
class PointSet:
    """Admissible lattice points with their kernel inputs."""

    K: np.ndarray
    M: np.ndarray
    E: np.ndarray
    shift: np.ndarray
    sign: np.ndarray
    vals: np.ndarray
    radius: int
    shell_minima: list

    def __len__(self):
        return len(self.K)


def _shell(dim: int, R: int) -> np.ndarray:
    if R == 0:
        return np.zeros((1, dim), dtype=np.int64)
    full = np.arange(-R, R + 1, dtype=np.int64)
    inner = np.arange(-(R - 1), R, dtype=np.int64)
    pieces = []
    for i in range(dim):
        for s in (-R, R):
            axes = [inner] * i + [np.array([s], dtype=np.int64)] + [full] * (dim - i - 1)
            grid = np.meshgrid(*axes, indexing="ij")
            pieces.append(np.stack([g.ravel() for g in grid], axis=1))
    return np.concatenate(pieces)


PointFn = Callable[[np.ndarray], tuple]


def _rotated_point_fn(nz: NZReduced, n: int, np_: int, alpha=None, beta=None) -> PointFn:
    A = np.array(nz.A, dtype=np.int64)
    B = np.array(nz.B, dtype=np.int64)
    nu = np.array(nz.nu, dtype=np.int64)
    lam = np.array(nz.lam, dtype=np.int64)
    lampp = np.array(nz.lampp, dtype=np.int64)
    N = nz.N
    al = np.zeros(N, dtype=np.int64) if alpha is None else np.asarray(alpha, dtype=np.int64)
    be = np.zeros(N, dtype=np.int64) if beta is None else np.asarray(beta, dtype=np.int64)
    d = n - np_
    s = n + np_
    l2c = -int(al @ be)

    def fn(K):
        m0 = lampp * d - K @ B
        e0 = -lam * d + K @ A
        x = K @ nu - d * nz.nu_lambda
        shift = x + K[:, N - 1] * s + m0 @ al + e0 @ be + l2c
        return m0 + be, e0 - al, x, shift

    return fn


def _plain_point_fn(nz: NZReduced, m: int, e: int) -> PointFn:
    N = nz.N
    Af = np.array(nz.A_full, dtype=np.int64)
    Bf = np.array(nz.B_full, dtype=np.int64)
    nuf = np.array(nz.nu_full, dtype=np.int64)
    # the longitude sign entry follows nu_lambda so that overrides carry over
    nuf[N + 1] = 2 * nz.nu_lambda
    # twice the fixed part of the linear forms: meridian slot e, longitude slot -m/2
    a_fix2 = 2 * e * Af[N] - m * Af[N + 1]
    b_fix2 = 2 * e * Bf[N] - m * Bf[N + 1]
    x_fix2 = 2 * e * nuf[N] - m * nuf[N + 1]
    if np.any(a_fix2 % 2) or np.any(b_fix2 % 2) or x_fix2 % 2:
        raise ValueError(f"half-integral tetrahedron argument for (m, e) = ({m}, {e})")
    a_fix, b_fix, x_fix = a_fix2 // 2, b_fix2 // 2, int(x_fix2 // 2)
    Ae, Be, nue = Af[: N - 1], Bf[: N - 1], nuf[: N - 1]

    def fn(K):
        ak = K @ Ae + a_fix
        bk = K @ Be + b_fix
        x = K @ nue + x_fix
        return -bk, ak, x, x

    return fn


def _evaluate(fn: PointFn, K: np.ndarray):
    M, E, x, shift = fn(K)
    vals = shift + tdeg_array(M, E).sum(axis=1)
    return M, E, x, shift, vals


def _growing(minima: list[int], block: int = 5) -> bool:
    # per-shell minima may oscillate with the shell parity; compare block envelopes
    if len(minima) < 2 * block:
        return False
    return min(minima[-block:]) > min(minima[-2 * block:-block])


def enumerate_points(fn: PointFn, dim: int, trunc: int, margin: int = 2,
                     max_radius: int | None = None, guard_start: int = 16) -> PointSet:
    """Collect every lattice point whose summand valuation is below ``trunc``.

    Shells ``max|k_i| = R`` are scanned outward. Scanning stops once
    ``1 + margin`` consecutive shells contain no admissible point, the
    radius is at least twice that of the last admissible point and of the
    lowest shell minimum seen (plus ``margin``), and the minimum valuation
    over the last five shells exceeds the minimum over the five before.
    Per-shell minima are not unimodal in general: valleys along directions
    where the quadratic part of the valuation vanishes can dip below the
    truncation again after several empty shells, hence the doubling.

    The growth check only starts at ``guard_start``: the linear terms of
    the valuation can push its minimum several shells away from the origin
    before the quadratic part takes over.

    Raises
    ------
    DivergenceGuard
        If the minimum valuation stops growing or ``max_radius`` is reached.
    """
    if max_radius is None:
        max_radius = 4 * max(trunc, 0) + 4 * guard_start + 64
    keep: list[tuple] = []
    minima: list[int] = []
    empty = 0
    last_hit = -1
    R = 0
    while True:
        K = _shell(dim, R)
        M, E, x, shift, vals = _evaluate(fn, K)
        minima.append(int(vals.min()))
        ok = vals < trunc
        if ok.any():
            keep.append((K[ok], M[ok], E[ok], x[ok], shift[ok], vals[ok]))
            empty = 0
            last_hit = R
        else:
            empty += 1
        ref = max(last_hit, minima.index(min(minima)))
        if empty >= 1 + margin and R >= 2 * ref + margin and _growing(minima):
            break
        if R >= guard_start and min(minima[R - 1:]) <= min(minima[R // 2 - 1:R // 2 + 1]) and minima[R] < trunc:
            raise DivergenceGuard(
                f"summand valuation does not grow: shells {R - 1}..{R} minimum {min(minima[R - 1:])}, "
                f"shells {R // 2 - 1}..{R // 2} minimum {min(minima[R // 2 - 1:R // 2 + 1])}"
            )
        if R >= max_radius:
            raise DivergenceGuard(f"no termination within radius {max_radius}")
        R += 1
    if keep:
        K, M, E, x, shift, vals = (np.concatenate(parts) for parts in zip(*keep))
    else:
        K = np.zeros((0, dim), dtype=np.int64)
        M = E = np.zeros((0, 1), dtype=np.int64)
        x = shift = vals = np.zeros(0, dtype=np.int64)
    sign = np.where(x % 2 == 0, 1, -1).astype(np.int8)
    return PointSet(K, M, E, shift, sign, vals, R, minima)


def _sum_points(ps: PointSet, trunc: int) -> QSeries:
    if len(ps) == 0:
        return QSeries.zero(trunc)
    return kernels.lattice_sum(ps.M, ps.E, ps.shift, ps.sign, trunc)


# ---------------------------------------------------------------------------
# public sums


def _guard_start(nz: NZReduced, d: int, s: int) -> int:
    # linear coefficients of the valuation scale with |d| and |s|
    big = max(max(abs(x) for x in nz.lam + nz.lampp), 1)
    return 16 + 4 * (abs(d) * big + abs(s))


def rotated_points(nz: NZReduced, n: int, np_: int, trunc: int, alpha=None, beta=None,
                   margin: int = 2) -> PointSet:
    fn = _rotated_point_fn(nz, n, np_, alpha, beta)
    return enumerate_points(fn, nz.N, trunc, margin, guard_start=_guard_start(nz, n - np_, n + np_))


def rotated_index(nz: NZReduced, n: int, np_: int, trunc: int, margin: int = 2) -> QSeries:
    """The rotated index ``I(n, n')`` modulo ``O(u^trunc)``.

    Examples
    --------
    >>> from desc3d.nzdata import builtin, reduce
    >>> str(rotated_index(reduce(builtin("4_1")), 0, 0, 8))
    '1 - 8*q - 9*q^2 + 18*q^3 + O(q^4)'
    """
    return _sum_points(rotated_points(nz, n, np_, trunc, margin=margin), trunc)


def monomial_sum(nz: NZReduced, alpha, beta, n: int, np_: int, trunc: int, margin: int = 2) -> QSeries:
    """Lattice sum of a Weyl monomial applied to the summand (coefficient excluded)."""
    return _sum_points(rotated_points(nz, n, np_, trunc, alpha, beta, margin), trunc)


def plain_index(nz: NZReduced, m: int, e: int, trunc: int, margin: int = 2) -> QSeries:
    """The 3D-index ``I(m, e)`` as an ``(N-1)``-dimensional lattice sum."""
    fn = _plain_point_fn(nz, m, e)
    if nz.N == 1:
        M, E, x, shift, vals = _evaluate(fn, np.zeros((1, 0), dtype=np.int64))
        if vals[0] >= trunc:
            return QSeries.zero(trunc)
        sign = np.where(x % 2 == 0, 1, -1).astype(np.int8)
        return kernels.lattice_sum(M, E, shift, sign, trunc)
    ps = enumerate_points(fn, nz.N - 1, trunc, margin, guard_start=_guard_start(nz, m, e))
    return _sum_points(ps, trunc)


def rotated_via_plain(nz: NZReduced, n: int, np_: int, trunc: int, quiet: int = 3) -> QSeries:
    """``sum_e I(n-n', e) u^(e(n+n'))``, stopping after ``quiet`` empty e-values on each side."""
    m = n - np_
    s = n + np_
    total = QSeries.zero(trunc)
    for direction in (1, -1):
        e = 0 if direction == 1 else -1
        silent = 0
        while silent < quiet:
            t = trunc - e * s
            part = plain_index(nz, m, e, t)
            if part.is_zero():
                silent += 1
            else:
                silent = 0
                total = total + part.shift(e * s)
            e += direction
            if abs(e) > 4 * trunc + 64:
                raise DivergenceGuard("e-sum does not terminate")
    return total


def window(nz: NZReduced, r: int, trunc: int, threads: int = 1,
           entry: Callable[[int, int], QSeries] | None = None) -> list[list[QSeries]]:
    """The ``r x r`` matrix of ``I(n, n')`` for ``0 <= n, n' < r``.

    ``entry`` overrides the per-entry computation (used for inserted
    windows). Entries are computed on ``threads`` worker threads; the
    result does not depend on the thread count.
    """
    if r < 1:
        raise ValueError("window size must be positive")
    f = entry or (lambda a, b: rotated_index(nz, a, b, trunc))
    cells = [(a, b) for a in range(r) for b in range(r)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            vals = list(ex.map(lambda ab: f(*ab), cells))
    else:
        vals = [f(a, b) for a, b in cells]
    return [vals[i * r:(i + 1) * r] for i in range(r)]
