"""Q-matrices: rational matrices with ``I_O[r] = Q I[r]`` on finite windows.

The quotient ``I_O[r] I[r]^-1`` is formed over Laurent series and each
entry is reconstructed as a rational function in ``u`` with escalating
degree bounds. A reconstruction counts only if every known coefficient
beyond the linear solve, at least ``guard`` of them, matches.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .indexsum import window
from .insertion import Insertion, inserted_rotated_index
from .nzdata import NZReduced
from .qseries import QSeries
from .ratfun import (
    NoReconstruction,
    RatFun,
    SingularMatrix,
    UPoly,
    common_denominator,
    mat_invert_series,
    mat_mul,
    mat_truncation,
    ratmat_det,
    reconstruct,
    series_of,
)

__all__ = [
    "QMatrix",
    "VerifyReport",
    "SingularWindow",
    "extract_q",
    "quotient_series",
    "reconstruct_entry",
    "verify_q",
    "residual_order",
    "DEGREE_LADDER",
]

# degree bounds in q-units: (4,4) doubling up to (32,32)
DEGREE_LADDER = (4, 8, 16, 32)


class SingularWindow(ArithmeticError):
    """The uninserted window is not invertible to working precision."""


@dataclass
class QMatrix:
    """A reconstructed Q-matrix with its common denominator factored out."""

    entries: list[list[RatFun]]
    denominator: UPoly
    numerators: list[list[UPoly]]
    trunc: int
    residual: int | None = None

    @property
    def size(self) -> int:
        return len(self.entries)

    def det(self) -> RatFun:
        return ratmat_det(self.entries)

    def to_text(self) -> str:
        lines = [f"prefactor 1/({self.denominator.format('q')})"]
        for row in self.numerators:
            lines.append(" | ".join(p.format("q") for p in row))
        return "\n".join(lines)


@dataclass
class VerifyReport:
    """Per-entry outcome of checking ``sum_m Q[n][m] I(m, n') == I_O(n, n')``."""

    trunc: int
    results: list[tuple[int, int, int | None]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(bad is None for _, _, bad in self.results)

    def first_failure(self) -> tuple[int, int, int] | None:
        for n, np_, bad in self.results:
            if bad is not None:
                return n, np_, bad
        return None


def quotient_series(I_O: Sequence[Sequence[QSeries]], I: Sequence[Sequence[QSeries]]) -> list[list[QSeries]]:
    """``I_O I^-1`` as a series matrix.

    Raises
    ------
    SingularWindow
    """
    try:
        inv = mat_invert_series(I)
    except SingularMatrix as exc:
        raise SingularWindow(str(exc)) from None
    return mat_mul(I_O, inv)


def reconstruct_entry(s: QSeries, max_deg_q: int = 32, guard: int = 20) -> RatFun:
    """Reconstruct one entry, escalating ``(d, d)`` in q-units through the ladder.

    The ladder is cut at ``max_deg_q``, which is always tried last.
    """
    last: Exception | None = None
    steps = [d for d in DEGREE_LADDER if d < max_deg_q] + [max_deg_q]
    for dq in steps:
        d = 2 * dq
        try:
            return reconstruct(s, d, d, guard)
        except NoReconstruction as exc:
            last = exc
            # too few coefficients for this bound: larger ones cannot do better
            if "known coefficients" in str(exc):
                break
    raise NoReconstruction(str(last) if last else "no degree bound tried")


def residual_order(Q: Sequence[Sequence[RatFun]], I: Sequence[Sequence[QSeries]],
                   I_O: Sequence[Sequence[QSeries]]) -> int | None:
    """u-order to which ``Q I - I_O`` vanishes (``None`` if exactly)."""
    r = len(Q)
    t = mat_truncation(I)
    orders = []
    for n in range(r):
        for np_ in range(len(I[0])):
            acc = QSeries.zero()
            for m in range(r):
                f = Q[n][m]
                if f.is_zero():
                    continue
                s = I[m][np_]
                acc = acc + s * series_of(f, (t or 0) - s.valuation)
            diff = acc - I_O[n][np_]
            if not diff.is_zero():
                return diff.valuation
            orders.append(diff.trunc)
    ts = [x for x in orders if x is not None]
    return min(ts) if ts else None


def extract_q(nz: NZReduced, ins: Insertion, r: int, trunc: int, guard: int = 20,
              max_deg_q: int = 32, threads: int = 1,
              windows: tuple | None = None) -> QMatrix:
    """Reconstruct ``Q_O`` from the ``r x r`` windows at u-truncation ``trunc``.

    ``windows`` may pass precomputed ``(I_O[r], I[r])``.

    Raises
    ------
    NoReconstruction
        If some entry has no rational form within the degree ladder.
    SingularWindow
        If ``I[r]`` is not invertible.
    """
    if windows is None:
        I = window(nz, r, trunc, threads)
        I_O = window(nz, r, trunc, threads,
                     entry=lambda a, b: inserted_rotated_index(nz, ins, a, b, trunc))
    else:
        I_O, I = windows
    S = quotient_series(I_O, I)
    Q = [[reconstruct_entry(x, max_deg_q, guard) for x in row] for row in S]
    d, P = common_denominator(Q)
    res = residual_order(Q, I, I_O)
    return QMatrix(Q, d, P, trunc, res)


def verify_q(nz: NZReduced, ins: Insertion, Q: Sequence[Sequence[RatFun]],
             samples: Sequence[tuple[int, int]], trunc: int) -> VerifyReport:
    """Check ``I_O(n, n') = sum_m Q[n][m] I(m, n')`` for the sampled entries.

    A failing entry records the u-exponent of its first mismatch.
    """
    from .indexsum import rotated_index

    r = len(Q)
    report = VerifyReport(trunc)
    cache: dict[tuple[int, int], QSeries] = {}

    def I(a, b, t):
        # entries of Q may carry large negative powers, so the index is
        # needed beyond ``trunc`` by that amount
        got = cache.get((a, b))
        if got is None or (got.trunc is not None and got.trunc < t):
            got = cache[(a, b)] = rotated_index(nz, a, b, t)
        return got.truncate(t)

    for n, np_ in samples:
        if not 0 <= n < r:
            raise ValueError(f"row {n} outside the {r} x {r} window")
        lhs = inserted_rotated_index(nz, ins, n, np_, trunc)
        rhs = QSeries.zero()
        for m in range(r):
            f = Q[n][m]
            if f.is_zero():
                continue
            v = f.valuation()
            s = I(m, np_, trunc - min(v, 0))
            if s.is_zero():
                continue
            rhs = rhs + s * series_of(f, trunc - s.valuation)
        diff = (rhs - lhs).truncate(trunc)
        report.results.append((n, np_, None if diff.is_zero() else diff.valuation))
    return report
