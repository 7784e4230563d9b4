from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from desc3d.qseries import QSeries
from desc3d.ratfun import (
    NoReconstruction,
    RatFun,
    SingularMatrix,
    UPoly,
    ZeroDenominator,
    common_denominator,
    mat_det,
    mat_invert_series,
    mat_mul,
    parse_ratfun,
    poly_gcd,
    ratmat_det,
    reconstruct,
    reconstruct_auto,
    series_of,
)

from oracles import ratfun


def P(*cs, val=0):
    return UPoly(val, cs)


# -- UPoly / RatFun basics ------------------------------------------------------

def test_upoly_strips_zeros():
    p = P(0, 0, 1, 2, 0, 0)
    assert p.val == 2 and p.coeffs == (1, 2)


def test_gcd_of_products():
    a = P(-1, 1) * P(1, 1)  # u^2 - 1
    b = P(-1, 1) * P(2, 0, 1)
    g = poly_gcd(a, b)
    assert g.monic() == P(-1, 1)


def test_ratfun_canonical_form():
    f = RatFun(P(-1, 0, 1), P(2, -2))  # (u^2-1)/(2-2u) = -(u+1)/2
    assert f.den == P(1) and f.num == P(Fraction(-1, 2), Fraction(-1, 2))


def test_ratfun_zero_denominator():
    with pytest.raises(ZeroDenominator):
        RatFun(P(1), UPoly())


def test_ratfun_arithmetic_matches_sympy():
    a = ratfun("(2 - q)/(q - 1)")
    b = ratfun("q^(1/2)/(1 + q)")
    assert a + b == ratfun("(2 - q)/(q - 1) + q^(1/2)/(1 + q)")
    assert a * b == ratfun("(2 - q)*q^(1/2)/((q - 1)*(1 + q))")
    assert a / b == ratfun("(2 - q)*(1 + q)/((q - 1)*q^(1/2))")


def test_text_round_trip():
    f = ratfun("(q^(-1/2) - 3*q^2)/(1 - q^3)")
    assert RatFun.from_text(f.to_text()) == f
    assert parse_ratfun("(1 - q)/(1 - q)") == RatFun.const(1)


# -- series_of -------------------------------------------------------------------

def test_series_of_geometric():
    assert series_of(RatFun(P(1), P(1, 0, -1)), 8) == QSeries(0, [1, 0, 1, 0, 1, 0, 1, 0], 8)


def test_series_of_q1_entry():
    # (2 - u^2)/(u^2 - 1) = -2 - u^2 - u^4 - ...
    got = series_of(ratfun("(2 - q)/(q - 1)"), 6)
    assert got == QSeries(0, [-2, 0, -1, 0, -1, 0], 6)


def test_series_of_polynomial_is_exact():
    assert series_of(RatFun(P(0, 1)), 5) == QSeries(1, [1])


# -- reconstruct -------------------------------------------------------------------

def test_reconstruct_q1_entry():
    f = ratfun("(2 - q)/(q - 1)")
    assert reconstruct(series_of(f, 40), 4, 4) == f


def test_reconstruct_zero():
    assert reconstruct(QSeries.zero(30), 2, 2).is_zero()


def test_reconstruct_needs_guard_coefficients():
    with pytest.raises(NoReconstruction):
        reconstruct(series_of(ratfun("1/(1 - q)"), 10), 4, 4, guard=20)


def test_reconstruct_rejects_transcendental():
    # partition generating function is not rational
    from desc3d.tetindex import tet_index
    s = tet_index(0, 0, 80)
    with pytest.raises(NoReconstruction):
        reconstruct_auto(s, 12)


small = st.integers(-4, 4)


@st.composite
def rational_functions(draw):
    num = UPoly(draw(st.integers(-2, 2)), draw(st.lists(small, min_size=1, max_size=7)))
    den = UPoly(draw(st.integers(-2, 2)), draw(st.lists(small, min_size=1, max_size=7)))
    if num.is_zero() or den.is_zero():
        num, den = P(1), P(1, -1)
    return RatFun(num, den)


@settings(max_examples=200, deadline=None)
@given(rational_functions())
def test_reconstruct_round_trip(f):
    s = series_of(f, f.valuation() + 40)
    assert reconstruct(s, 6, 6) == f


# -- matrices -------------------------------------------------------------------

def _ser(val, cs, t=16):
    return QSeries(val, cs, t)


def test_invert_identity_and_monomial_diagonal():
    one, zero = QSeries.one(), QSeries.zero()
    I = [[one, zero], [zero, one]]
    assert mat_invert_series(I) == I
    D = [[QSeries.monomial(1), zero], [zero, QSeries.monomial(-1)]]
    inv = mat_invert_series(D)
    assert inv[0][0] == QSeries.monomial(-1) and inv[1][1] == QSeries.monomial(1)
    assert inv[0][1].is_zero() and inv[1][0].is_zero()


def test_singular_matrix():
    a = _ser(0, [1, 2, 3])
    with pytest.raises(SingularMatrix):
        mat_invert_series([[a, a], [a, a]])


def test_det_diagonal():
    a, b = _ser(0, [1, 2]), _ser(-1, [3, 0, 1])
    z = QSeries.zero()
    assert mat_det([[a, z], [z, b]]) == a * b


series3 = st.builds(lambda v, cs: QSeries(v, [1] + cs, 14),
                    st.integers(-1, 1), st.lists(small, min_size=13, max_size=13))


@settings(max_examples=25, deadline=None)
@given(st.lists(series3, min_size=9, max_size=9), st.lists(series3, min_size=9, max_size=9))
def test_det_multiplicative(xs, ys):
    M = [xs[0:3], xs[3:6], xs[6:9]]
    N = [ys[0:3], ys[3:6], ys[6:9]]
    lhs = mat_det(mat_mul(M, N))
    rhs = mat_det(M) * mat_det(N)
    assert lhs.first_mismatch(rhs) is None


@settings(max_examples=25, deadline=None)
@given(st.lists(series3, min_size=4, max_size=4))
def test_inverse_two_sided(xs):
    M = [xs[0:2], xs[2:4]]
    if mat_det(M).is_zero():
        return
    inv = mat_invert_series(M)
    for prod in (mat_mul(M, inv), mat_mul(inv, M)):
        for i in range(2):
            for j in range(2):
                want = QSeries.one() if i == j else QSeries.zero()
                assert prod[i][j].first_mismatch(want) is None


def test_ratmat_det_and_common_denominator():
    Q = [[ratfun("(2 - q)/(q - 1)"), ratfun("-q^(1/2)/(q - 1)")],
         [ratfun("q^(1/2)/(q - 1)"), ratfun("(-q - 1 + q^-1)/(q - 1)")]]
    assert ratmat_det(Q) == ratfun("1 + 2*q^-1")
    d, P_ = common_denominator(Q)
    assert RatFun(d) == ratfun("q - 1") or RatFun(d) == ratfun("1 - q")
    for i in range(2):
        for j in range(2):
            assert RatFun(P_[i][j], d) == Q[i][j]
