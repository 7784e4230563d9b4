import threading

import pytest

from desc3d.tetindex import clear_cache, tet_coeffs, tet_degree, tet_index

from oracles import tet_index_direct

T = 30


@pytest.mark.parametrize("m,e,delta_q", [(0, 0, 0), (-1, 0, 0), (2, 3, 6), (1, 0, 1)])
def test_degree_closed_form(m, e, delta_q):
    # tet_degree reports u-units, twice the q-degree
    assert tet_degree(m, e) == 2 * delta_q


def _degree_formula(m, e):
    p = lambda t: max(t, 0)
    return p(m) * p(m + e) + p(-m) * p(e) + p(-e) * p(-e - m) + max(0, m, -e)


@pytest.mark.parametrize("m", range(-6, 7))
def test_valuation_is_degree(m):
    for e in range(-6, 7):
        s = tet_index(m, e, T + 2 * tet_degree(m, e))
        assert s.valuation == tet_degree(m, e) == _degree_formula(m, e)


@pytest.mark.parametrize("m,e", [(0, 0), (1, 0), (-1, 2), (2, -3), (3, 1), (-2, -2), (1, 5)])
def test_matches_direct_summation(m, e):
    assert tet_index(m, e, T).first_mismatch(tet_index_direct(m, e, T)) is None


def test_zero_zero_leading_terms():
    # 1 - q - 2q^2 - 2q^3, read off the direct sum
    ref = tet_index_direct(0, 0, 8)
    assert tet_index(0, 0, 8) == ref
    assert [ref[2 * k] for k in range(4)] == [1, -1, -2, -2]


def test_integral_coefficients():
    for m in range(-4, 5):
        for e in range(-4, 5):
            assert tet_index(m, e, 24).is_integral()


def test_odd_em_uses_half_powers():
    s = tet_index(1, 1, 20)
    assert all(k % 2 == s.valuation % 2 for k, _ in s.items())
    assert s.valuation % 2 == 1


def test_coeffs_prefix_stable():
    a = tet_coeffs(2, -1, 40)
    b = tet_coeffs(2, -1, 80)
    assert b[:len(a)] == a


def test_cache_threadsafe():
    clear_cache()
    out = {}

    def work(i):
        out[i] = [tet_index(m, e, 40) for m in range(-3, 4) for e in range(-3, 4)]

    ts = [threading.Thread(target=work, args=(i,)) for i in range(4)]
    for t in ts:
        t.start()
    for t in ts:
        t.join()
    clear_cache()
    ref = [tet_index(m, e, 40) for m in range(-3, 4) for e in range(-3, 4)]
    assert all(out[i] == ref for i in out)
