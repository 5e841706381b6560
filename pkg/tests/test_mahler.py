import math

import mpmath
import pytest

from pdmahler.decomposition import auxiliary_names
from pdmahler.dilog import clausen2
from pdmahler.lvalues import d_f
from pdmahler.mahler import (CombinationProduct, combination_measure, limit_gap, m_infinity, m_pd,
                             mahler_numeric, parse_basis_id, s_d)
from pdmahler.polynomial import BivariatePoly, pd_poly, ray_q7

PREC = 40
TOL = mpmath.mpf(10) ** (-PREC + 5)


def test_small_s_d():
    assert s_d(1, PREC) == 0 and s_d(2, PREC) == 0
    with mpmath.workdps(PREC + 10):
        assert abs(s_d(3, PREC) / (2 * mpmath.pi) - 2 * d_f(3, PREC)) < TOL
        assert abs(s_d(4, PREC) / (2 * mpmath.pi) - 3 * d_f(4, PREC)) < TOL


@pytest.mark.parametrize("d", range(1, 61))
def test_s_d_half_range_symmetry(d):
    with mpmath.workdps(PREC + 10):
        full = 3 * mpmath.fsum((d - 2 * k) * clausen2(k, d, PREC) for k in range(1, d))
        half = 6 * mpmath.fsum((d - 2 * k) * clausen2(k, d, PREC) for k in range(1, (d + 1) // 2))
        assert abs(full - half) < TOL
        assert abs(s_d(d, PREC) - full) < TOL


def test_m_pd_examples():
    with mpmath.workdps(PREC + 10):
        m = {d: m_pd(d, PREC) for d in range(1, 11)}
        assert abs(m[1] - d_f(3, PREC)) < TOL
        assert abs(m[4] - (-mpmath.mpf(2) / 3 * m[3] - mpmath.mpf(2) / 5 * m[2] + 3 * m[1])) < TOL
        lhs = 66 * m[10] + 55 * m[9] + 45 * m[8] + 36 * m[7] + 28 * m[6] + 21 * m[5]
        assert abs(lhs - 243 * m[1] - 126 * m[2]) < TOL


def test_positivity():
    assert all(m_pd(d, 20) > 0 for d in range(1, 201))


def test_limit_constant():
    with mpmath.workdps(PREC + 10):
        assert abs(m_infinity(PREC) - 9 * mpmath.zeta(3) / (2 * mpmath.pi**2)) < TOL
    assert abs(m_infinity(20) - mpmath.mpf("0.548072227")) < 1e-9


def test_limit_gap_decay():
    g = [limit_gap(d, 30) for d in (50, 100, 200)]
    assert g[2] < g[1] < g[0]
    assert g[1] * 100**2 / math.log(100) <= 10


def test_combination_measure():
    with mpmath.workdps(PREC + 10):
        assert combination_measure({}, PREC) == 0
        assert abs(combination_measure({"P1": 1, "P2": 2}, PREC) - 2 * d_f(4, PREC)) < TOL
        c8 = CombinationProduct({"P_1": 33, "P2": -30, "P5": 21, "P6": 28})
        assert abs(combination_measure(c8, PREC) - 12 * d_f(8, PREC)) < TOL
        assert abs(combination_measure({"RayQ7": 7}, PREC) - 8 * d_f(7, PREC)) < TOL
    with pytest.raises((KeyError, ValueError)):
        combination_measure({"Q99": 1}, PREC)


def test_combination_product_normalises():
    c = CombinationProduct({"P_2": 3, "P10": -1, "P3": 0, "RayQ7": 2})
    assert dict(c.items()) == {"P2": 3, "P10": -1, "RayQ7": 2}
    assert parse_basis_id("P_12") == 12 and parse_basis_id("RayQ7") == "RayQ7"
    assert "RayQ7" in auxiliary_names()


def test_oracle_trivial_cases():
    est = mahler_numeric(BivariatePoly.parse("5"), nodes=64)
    assert abs(est.value - math.log(5)) < 1e-15
    assert abs(mahler_numeric(BivariatePoly.parse("x*y"), nodes=64).value) < 1e-12
    assert abs(mahler_numeric(BivariatePoly.parse("x - 2"), nodes=64).value - math.log(2)) < 1e-12
    # m(x + y + 2) = log 2 (Jensen: |2| dominates)
    assert abs(mahler_numeric(BivariatePoly.parse("x + y + 2"), nodes=256).value - math.log(2)) < 1e-12


def test_oracle_errors():
    with pytest.raises(ValueError):
        mahler_numeric(BivariatePoly({}))
    with pytest.raises(ValueError):
        mahler_numeric(pd_poly(1), nodes=100)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_oracle_agrees_with_closed_formula(d):
    est = mahler_numeric(pd_poly(d), nodes=4096)
    assert abs(est.value - m_pd(d, 30)) < 1e-6
    assert est.error < 1e-4


@pytest.mark.slow
def test_oracle_ray_polynomial():
    est = mahler_numeric(ray_q7(), nodes=4096)
    assert abs(est.value * 7 / 8 - d_f(7, 30)) < 1e-5


def test_oracle_is_deterministic():
    a = mahler_numeric(pd_poly(4), nodes=512)
    b = mahler_numeric(pd_poly(4), nodes=512)
    assert a == b
