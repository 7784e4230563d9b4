"""Colored holomorphic blocks of 4_1 and 5_2 and their bilinear factorization.

Every formula is evaluated in a q-context ``q = u^(2s)`` with ``s = +1``
(the block at ``q``) or ``s = -1`` (the block at ``q^-1``). Finite
q-Pochhammer symbols are exact Laurent polynomials in ``u`` in either
context; dividing by one expands it as a series in positive powers of
``u``, which is the rewrite
``(q^-1; q^-1)_k = (-1)^k q^(-k(k+1)/2) (q; q)_k``.
The Lambert series use ``E_l(q^-1) = -E_l(q)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .qseries import QSeries

__all__ = [
    "UnsupportedEll",
    "DivergentRewrite",
    "BlockId",
    "FactorizationReport",
    "eisenstein",
    "q_harmonic",
    "block",
    "factorization_check",
    "bilinear_index",
    "BLOCK_COUNT",
]

BLOCK_COUNT = {"4_1": 2, "5_2": 3}

# safety cap on the number of terms of an infinite k-sum
_MAX_TERMS = 10_000


class UnsupportedEll(ValueError):
    """Only ``E_1`` and ``E_2`` are implemented."""


class DivergentRewrite(ArithmeticError):
    """Term valuations of a k-sum do not increase, so the sum does not converge in ``u``."""


@dataclass(frozen=True)
class BlockId:
    knot: str
    alpha: int
    n: int

    def __post_init__(self):
        if self.knot not in BLOCK_COUNT:
            raise ValueError(f"blocks are available for 4_1 and 5_2, not {self.knot!r}")
        if not 0 <= self.alpha < BLOCK_COUNT[self.knot]:
            raise ValueError(f"alpha={self.alpha} out of range for {self.knot}")


# ---------------------------------------------------------------------------
# auxiliary series


@lru_cache(maxsize=64)
def eisenstein(ell: int, trunc: int) -> QSeries:
    """``E_l(q) = zeta(1-l)/2 + sum_s s^(l-1) q^s/(1-q^s)`` to ``O(u^trunc)``.

    Raises
    ------
    UnsupportedEll
        For ``ell`` other than 1 or 2.
    """
    if ell == 1:
        const = Fraction(-1, 4)
    elif ell == 2:
        const = Fraction(-1, 24)
    else:
        raise UnsupportedEll(f"E_{ell} is not supported (only l = 1, 2)")
    top = (trunc + 1) // 2  # q-exponents below this are known
    if top <= 0:
        return QSeries.zero(trunc)
    sigma = [0] * top
    for d in range(1, top):
        w = d ** (ell - 1)
        for m in range(d, top, d):
            sigma[m] += w
    terms = {2 * m: sigma[m] for m in range(1, top)}
    terms[0] = const
    return QSeries.from_dict(terms, trunc)


def _div(num: QSeries, den: QSeries, trunc: int) -> QSeries:
    """``num / den`` for exact ``num``, ``den`` to ``O(u^trunc)``."""
    if num.is_zero():
        return QSeries.zero(trunc)
    return (num * den.invert(trunc - num.valuation)).truncate(trunc)


@lru_cache(maxsize=4096)
def _harmonic_term(s: int, j: int, kind: int, trunc: int) -> QSeries:
    x = QSeries.monomial(2 * s * j)
    den = QSeries.one() - x
    if kind == 2:
        den = den * den
    return _div(x, den, trunc)


@lru_cache(maxsize=4096)
def _harmonic(s: int, n: int, kind: int, trunc: int) -> QSeries:
    acc = QSeries.zero(trunc)
    for j in range(1, n + 1):
        acc = acc + _harmonic_term(s, j, kind, trunc)
    return acc


def q_harmonic(n: int, kind: int, trunc: int) -> QSeries:
    """``H_n(q) = sum_{j<=n} q^j/(1-q^j)``; ``kind=2`` squares the denominator."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if kind not in (1, 2):
        raise ValueError("kind must be 1 or 2")
    return _harmonic(1, n, kind, trunc)


# ---------------------------------------------------------------------------
# q-context


@lru_cache(maxsize=4096)
def _poch(sign: int, k: int) -> QSeries:
    """Exact ``prod_{i=1}^k (1 - u^(2 sign i))``."""
    acc = QSeries.one()
    for i in range(1, k + 1):
        acc = acc * (QSeries.one() - QSeries.monomial(2 * sign * i))
    return acc


class _Ctx:
    """Evaluation of formula pieces at ``q = u^(2s)``."""

    def __init__(self, s: int):
        self.s = s

    def q(self, e) -> QSeries:
        e2 = Fraction(e) * 2 * self.s
        if e2.denominator != 1:
            raise ValueError(f"q-power {e} is not a half-integer")
        return QSeries.monomial(int(e2))

    def poch(self, k: int) -> QSeries:
        """``(q; q)_k``."""
        return _poch(self.s, k)

    def poch_inv(self, k: int) -> QSeries:
        """``(q^-1; q^-1)_k``."""
        return _poch(-self.s, k)

    def E(self, ell: int, trunc: int) -> QSeries:
        e = eisenstein(ell, trunc)
        return e if self.s == 1 else -e

    def H(self, n: int, trunc: int, kind: int = 1) -> QSeries:
        return _harmonic(self.s, n, kind, trunc)


Term = tuple  # (numerator, denominator, bracket builder or None)


def _ksum(term: Callable[[int], Term], trunc: int, count: int | None = None) -> QSeries:
    """Sum ``N_k/D_k * B_k`` over ``k`` to ``O(u^trunc)``.

    Brackets ``B_k`` have nonnegative valuation, so ``val(N_k) - val(D_k)``
    bounds each term from below. For an infinite sum (``count=None``) the
    loop stops once this bound reaches ``trunc`` and is checked to be
    increasing and convex there.
    """
    acc = QSeries.zero(trunc)

    def bound(k):
        N, D, _ = term(k)
        return N.valuation - D.valuation if not N.is_zero() else None

    k = 0
    while True:
        if count is not None and k >= count:
            break
        if count is None and k > _MAX_TERMS:
            raise DivergentRewrite(f"no convergence after {_MAX_TERMS} terms")
        N, D, B = term(k)
        if N.is_zero():
            k += 1
            continue
        v = N.valuation - D.valuation
        if v >= trunc:
            if count is None:
                v1, v2 = bound(k + 1), bound(k + 2)
                if v1 is None or v2 is None or not (v < v1 and v1 - v < v2 - v1):
                    raise DivergentRewrite(
                        f"term valuations {v}, {v1}, {v2} at k={k} are not increasing"
                    )
                break
            k += 1
            continue
        t = _div(N, D, trunc)
        if B is not None:
            t = (t * B(trunc - v)).truncate(trunc)
        acc = acc + t
        k += 1
    return acc


def _with_pref(pref: QSeries, inner: Callable[[int], QSeries], trunc: int) -> QSeries:
    return (pref * inner(trunc - pref.valuation)).truncate(trunc)


# ---------------------------------------------------------------------------
# 4_1


def _b41(alpha: int, n: int, c: _Ctx, trunc: int) -> QSeries:
    m = abs(n)
    sg = -1 if n % 2 else 1

    def term(k):
        N = c.q(Fraction(k * (k + 1), 2) + m * k).scale((-1) ** k)
        D = c.poch(k) * c.poch(k + 2 * m)
        if alpha == 0:
            return N, D, None

        def bracket(t):
            # sum_{l<=K} (1+q^l)/(1-q^l) = K + 2 H_K
            return (c.E(1, t).scale(-4) + (k + 2 * m) + c.H(k + 2 * m, t).scale(2)
                    + k + c.H(k, t).scale(2))

        return N, D, bracket

    pref = c.q(Fraction(m * (2 * m + 1), 2)).scale(sg)
    out = _with_pref(pref, lambda t: _ksum(term, t), trunc)
    if alpha == 0 or m == 0:
        return out

    def fin(k):
        N = (c.q(Fraction(k * (k + 1), 2) - m * k) * c.poch_inv(2 * m - 1 - k)).scale((-1) ** k)
        return N, c.poch(k), None

    pref2 = c.q(Fraction(m * (2 * m - 1), 2)).scale(-2 * sg)
    return out + _with_pref(pref2, lambda t: _ksum(fin, t, 2 * m), trunc)


# ---------------------------------------------------------------------------
# 5_2


def _b52(alpha: int, n: int, c: _Ctx, trunc: int) -> QSeries:
    m = abs(n)
    sg = -1 if n % 2 else 1

    def a1(k, t):
        # k + |n| - 1/4 + H_k + H_{k+|n|} + H_{k+2|n|}; the -3 E_1 part is kept apart
        return (c.H(k, t) + c.H(k + m, t) + c.H(k + 2 * m, t)) + (Fraction(k + m) - Fraction(1, 4))

    def term(k):
        N = c.q(m * k)
        D = c.poch_inv(k) * c.poch(k + 2 * m) * c.poch(k + m)
        if alpha == 0:
            return N, D, None
        if alpha == 1:
            return N, D, lambda t: a1(k, t) - c.E(1, t).scale(3)

        def bracket(t):
            e1 = c.E(1, t)
            a = a1(k, t)
            # (a - 3 E_1)^2 = a^2 - 6 a E_1 + 9 E_1^2
            sq = a * a - (a * e1).scale(6) + (e1 * e1).scale(9)
            h2 = c.H(k, t, 2) + c.H(k + m, t, 2) + c.H(k + 2 * m, t, 2)
            return (c.E(2, t) + Fraction(1, 8) - h2 - sq).truncate(t)

        return N, D, bracket

    pref = c.q(Fraction(m, 2)).scale(-sg if alpha == 1 else sg)
    out = _with_pref(pref, lambda t: _ksum(term, t), trunc)
    if alpha == 0 or m == 0:
        return out

    def fin(k):
        N = c.poch_inv(m - 1 - k)
        D = c.poch_inv(k) * c.poch(k + m)
        if alpha == 1:
            return N, D, None

        def bracket(t):
            return (c.H(k, t) + c.H(k + m, t) + c.H(m - k - 1, t) - c.E(1, t).scale(3)
                    + (Fraction(m) - Fraction(3, 4)))

        return N, D, bracket

    pref2 = c.q(Fraction(-n * n, 2)).scale(1 if alpha == 1 else 2)
    out = out + _with_pref(pref2, lambda t: _ksum(fin, t, m), trunc)
    if alpha == 1:
        return out

    def fin2(k):
        N = c.q(-m * k) * c.poch_inv(2 * m - k - 1) * c.poch_inv(m - k - 1)
        return N, c.poch_inv(k), None

    pref3 = c.q(Fraction(-m, 2)).scale(-2 * sg)
    return out + _with_pref(pref3, lambda t: _ksum(fin2, t, m), trunc)


_FORMULAS = {"4_1": _b41, "5_2": _b52}


@lru_cache(maxsize=512)
def _block(knot: str, alpha: int, n: int, s: int, trunc: int) -> QSeries:
    return _FORMULAS[knot](alpha, n, _Ctx(s), trunc)


def block(bid: BlockId, at_inverse: bool = False, trunc: int = 40) -> QSeries:
    """``h^(alpha)_n(q)``, or ``h^(alpha)_n(q^-1)`` rewritten as a series in ``u``.

    Raises
    ------
    DivergentRewrite
        If the term valuations of an infinite sum stop increasing.
    """
    return _block(bid.knot, bid.alpha, bid.n, -1 if at_inverse else 1, trunc)


# ---------------------------------------------------------------------------
# factorization


def bilinear_index(knot: str, n: int, np_: int, trunc: int) -> QSeries:
    """The rotated index assembled from blocks.

    4_1: ``-1/2 h1_n'(1/q) h0_n(q) + 1/2 h0_n'(1/q) h1_n(q)``.
    5_2: ``-1/2 h0_n'(1/q) h2_n(q) - h1_n'(1/q) h1_n(q) - 1/2 h2_n'(1/q) h0_n(q)``.
    """
    if knot == "4_1":
        pairs = [(1, 0, Fraction(-1, 2)), (0, 1, Fraction(1, 2))]
    elif knot == "5_2":
        pairs = [(0, 2, Fraction(-1, 2)), (1, 1, Fraction(-1)), (2, 0, Fraction(-1, 2))]
    else:
        raise ValueError(f"no block factorization for {knot!r}")

    def h(alpha, idx, inv, t):
        return block(BlockId(knot, alpha, idx), inv, t)

    acc = QSeries.zero(trunc)
    for a_inv, a, c in pairs:
        left = h(a_inv, np_, True, trunc)
        right = h(a, n, False, trunc)
        # a factor with negative valuation needs the other one deeper
        if not right.is_zero() and right.valuation < 0:
            left = h(a_inv, np_, True, trunc - right.valuation)
        if not left.is_zero() and left.valuation < 0:
            right = h(a, n, False, trunc - left.valuation)
        acc = acc + (left * right).scale(c).truncate(trunc)
    return acc


@dataclass
class FactorizationReport:
    knot: str
    n: int
    np: int
    trunc: int
    mismatch: int | None = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.mismatch is None


def factorization_check(knot: str, n: int, np_: int, trunc: int) -> FactorizationReport:
    """Compare the block bilinear form with the lattice-sum rotated index."""
    from .indexsum import rotated_index
    from .nzdata import builtin_reduced

    lhs = bilinear_index(knot, n, np_, trunc)
    rhs = rotated_index(builtin_reduced(knot), n, np_, trunc)
    d = (lhs - rhs).truncate(trunc)
    return FactorizationReport(knot, n, np_, trunc, None if d.is_zero() else d.valuation)
