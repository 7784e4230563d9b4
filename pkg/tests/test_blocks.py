from fractions import Fraction

import pytest
import sympy as sp

from desc3d.blocks import (
    BLOCK_COUNT,
    BlockId,
    UnsupportedEll,
    block,
    eisenstein,
    factorization_check,
    q_harmonic,
)
from desc3d.indexsum import rotated_index
from desc3d.nzdata import builtin_reduced
from desc3d.qseries import QSeries

from oracles import block_41_h0_direct, series
from reference_values import INDEX_41, INDEX_41_TOP

T = 40


def _q(coeffs: dict, trunc):
    return QSeries.from_dict({2 * k: v for k, v in coeffs.items()}, trunc)


@pytest.mark.parametrize("ell,const", [(1, Fraction(-1, 4)), (2, Fraction(-1, 24))])
def test_eisenstein_divisor_sums(ell, const):
    want = {0: const}
    for s in range(1, T // 2):
        want[s] = int(sp.divisor_sigma(s, ell - 1))
    assert eisenstein(ell, T) == _q(want, T)


def test_eisenstein_first_terms():
    e1 = eisenstein(1, 10)
    assert [e1[2 * k] for k in range(5)] == [Fraction(-1, 4), 1, 2, 2, 3]
    e2 = eisenstein(2, 10)
    assert [e2[2 * k] for k in range(5)] == [Fraction(-1, 24), 1, 3, 4, 7]


def test_eisenstein_unsupported():
    with pytest.raises(UnsupportedEll):
        eisenstein(3, 10)


def test_harmonic():
    assert q_harmonic(0, 1, T).is_zero()
    assert q_harmonic(1, 1, T) == _q({k: 1 for k in range(1, T // 2)}, T)
    assert q_harmonic(1, 2, T) == _q({k: k for k in range(1, T // 2)}, T)
    # H_3 = sum_{j<=3} sum_{m>=1} q^(jm)
    want: dict = {}
    for j in (1, 2, 3):
        for m in range(1, T // (2 * j) + 1):
            if j * m < T // 2:
                want[j * m] = want.get(j * m, 0) + 1
    assert q_harmonic(3, 1, T) == _q(want, T)


def test_block_id_validation():
    with pytest.raises(ValueError):
        BlockId("4_1", 2, 0)
    with pytest.raises(ValueError):
        BlockId("m237", 0, 0)
    assert BLOCK_COUNT == {"4_1": 2, "5_2": 3}


@pytest.mark.parametrize("n", [-2, -1, 0, 1, 2, 3])
def test_41_h0_direct_summation(n):
    assert block(BlockId("4_1", 0, n), False, T) == block_41_h0_direct(n, T)


@pytest.mark.parametrize("knot", ["4_1", "5_2"])
def test_even_in_n(knot):
    for alpha in range(BLOCK_COUNT[knot]):
        for n in (1, 2):
            for inv in (False, True):
                a = block(BlockId(knot, alpha, n), inv, 30)
                b = block(BlockId(knot, alpha, -n), inv, 30)
                assert a == b


@pytest.mark.parametrize("n", [0, 1, 2])
def test_41_inverse_symmetry(n):
    h0 = block(BlockId("4_1", 0, n), False, T)
    h1 = block(BlockId("4_1", 1, n), False, T)
    assert block(BlockId("4_1", 0, n), True, T) == h0
    assert block(BlockId("4_1", 1, n), True, T) == -h1


def test_prefactor_valuations():
    for n in range(4):
        assert block(BlockId("4_1", 0, n), False, 60).valuation == n * (2 * n + 1)
        assert block(BlockId("5_2", 0, n), False, 60).valuation == n


def test_factorization_41_printed_entry():
    from desc3d.blocks import bilinear_index
    s = bilinear_index("4_1", 0, 0, INDEX_41_TOP[(0, 0)] + 1)
    assert s == series(INDEX_41[(0, 0)], INDEX_41_TOP[(0, 0)] + 1)


@pytest.mark.parametrize("knot", ["4_1", "5_2"])
def test_factorization_matches_lattice_sum(knot):
    for n, np_ in [(0, 0), (1, 0), (0, 1), (2, -1)]:
        rep = factorization_check(knot, n, np_, T)
        assert rep.passed, rep


def test_factorization_report_fields():
    rep = factorization_check("4_1", 1, 1, 20)
    assert rep.knot == "4_1" and (rep.n, rep.np) == (1, 1) and rep.mismatch is None
