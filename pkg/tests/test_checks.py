import pytest

from desc3d.checks import SUITES, Check, run_suite

T = 12


@pytest.mark.parametrize("suite", ["lagrangian", "edges", "symmetry"])
def test_suite_passes_on_41(suite):
    checks = run_suite(suite, ["4_1"], T)
    assert checks and all(c.passed for c in checks), [c for c in checks if not c.passed]


def test_lagrangian_counts():
    # one check per tetrahedron and (n, n') in {0,1}^2
    assert len(run_suite("lagrangian", ["5_2"], 8)) == 3 * 4


def test_factorization_small():
    checks = SUITES["factorization"]("4_1", T, r=1)
    assert len(checks) == 9 and all(c.passed for c in checks)


def test_factorization_unknown_knot_fails():
    (c,) = SUITES["factorization"]("m237", T)
    assert not c.passed


def test_recursion_41():
    checks = run_suite("recursion", ["4_1"], 30)
    assert all(c.passed for c in checks), [c for c in checks if not c.passed]


def test_aj_reports_observed_ratios():
    checks = run_suite("aj", None, 0)
    assert [c.name for c in checks] == ["4_1:O1 classical ratio", "4_1:O2 classical ratio"]
    # the stated ratios are not what the printed operators give
    assert "got 1 + x + x^2," in checks[0].detail and not checks[0].passed
    assert "got 1," in checks[1].detail and not checks[1].passed


def test_check_record():
    assert Check("x", True).detail == ""
