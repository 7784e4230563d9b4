import random

import pytest

from desc3d import kernels
from desc3d.indexsum import (
    DivergenceGuard,
    plain_index,
    rotated_index,
    rotated_via_plain,
    summand,
    summand_valuation,
    window,
)
from desc3d.nzdata import NZReduced, builtin_names, builtin_reduced
from desc3d.qseries import QSeries
from desc3d.tetindex import tet_index

from oracles import series
from reference_values import INDEX_41, INDEX_41_TOP

NZ41 = builtin_reduced("4_1")


def _irot41_term(k1, k2, n, np_, trunc):
    # q^(k2(n+n')/2) I(k1, k1+k2) I(k1+k2-n+n', k1-n+n')
    a = tet_index(k1, k1 + k2, trunc + 200)
    b = tet_index(k1 + k2 - n + np_, k1 - n + np_, trunc + 200)
    return (a * b).shift(k2 * (n + np_)).truncate(trunc)


def test_summand_at_origin():
    t = tet_index(0, 0, 20)
    assert summand(NZ41, (0, 0), 0, 0, 20) == (t * t).truncate(20)


@pytest.mark.parametrize("k1,k2,n,np_", [(1, -1, 0, 0), (2, 1, 1, 0), (-1, 2, 0, 2), (0, -3, 2, 1)])
def test_summand_matches_explicit_41_formula(k1, k2, n, np_):
    T = summand_valuation(NZ41, (k1, k2), n, np_) + 20
    assert summand(NZ41, (k1, k2), n, np_, T) == _irot41_term(k1, k2, n, np_, T)


def test_valuation_formula_random():
    rng = random.Random(7)
    names = builtin_names()
    for _ in range(500):
        nz = builtin_reduced(rng.choice(names))
        k = [rng.randint(-3, 3) for _ in range(nz.N)]
        n, np_ = rng.randint(-3, 3), rng.randint(-3, 3)
        v = summand_valuation(nz, k, n, np_)
        s = summand(nz, k, n, np_, v + 4)
        assert s.valuation == v


def test_valuation_grows_along_rays():
    for v in [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)]:
        vals = [summand_valuation(NZ41, (t * v[0], t * v[1]), 0, 0) for t in (12, 25, 50)]
        assert vals[0] < vals[1] < vals[2], v


@pytest.mark.parametrize("entry", sorted(INDEX_41))
def test_41_window_printed(entry):
    top = INDEX_41_TOP[entry]
    got = rotated_index(NZ41, *entry, top + 1)
    assert got == series(INDEX_41[entry], top + 1)


def test_41_leading_term_and_doctest_value():
    s = rotated_index(NZ41, 0, 0, 8)
    assert s.valuation == 0 and s[0] == 1


@pytest.mark.parametrize("name", ["4_1", "5_2"])
def test_margin_doubling_changes_nothing(name):
    nz = builtin_reduced(name)
    for n, np_ in [(0, 0), (1, 0), (2, 1)]:
        assert rotated_index(nz, n, np_, 40) == rotated_index(nz, n, np_, 40, margin=4)


@pytest.mark.parametrize("name", ["4_1", "5_2"])
def test_plain_route_agrees(name):
    nz = builtin_reduced(name)
    for n, np_ in [(0, 0), (0, 1), (1, 1)]:
        assert rotated_via_plain(nz, n, np_, 24).first_mismatch(rotated_index(nz, n, np_, 24)) is None


def test_plain_index_leading_coefficient():
    s = plain_index(NZ41, 0, 0, 12)
    assert s.valuation == 0 and s[0] == 1


@pytest.mark.parametrize("name", builtin_names())
def test_symmetry(name):
    nz = builtin_reduced(name)
    for n, np_ in [(1, 0), (0, 2), (1, 2)]:
        a = rotated_index(nz, n, np_, 24)
        for x, y in [(-n, np_), (n, -np_), (-n, -np_)]:
            assert a == rotated_index(nz, x, y, 24)


def test_window_independent_of_threads():
    assert window(NZ41, 3, 20, threads=1) == window(NZ41, 3, 20, threads=3)


def test_window_size_validated():
    with pytest.raises(ValueError):
        window(NZ41, 0, 10)


@pytest.mark.skipif("compiled" not in kernels.available_backends(), reason="no compiled kernel")
def test_backends_agree():
    nz = builtin_reduced("5_2")
    before = kernels.backend()
    try:
        kernels.set_backend("python")
        a = rotated_index(nz, 1, 0, 30)
        kernels.set_backend("compiled")
        b = rotated_index(nz, 1, 0, 30)
    finally:
        kernels.set_backend(before)
    assert a == b


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.set_backend("gpu")


def test_divergence_guard():
    zero = ((0,),)
    nz = NZReduced(1, zero, zero, (0,), (0,), (0,), 0, ((0,),) * 3, ((0,),) * 3, (0, 0, 0))
    with pytest.raises(DivergenceGuard):
        rotated_index(nz, 0, 0, 10)
