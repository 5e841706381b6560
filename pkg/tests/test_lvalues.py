import mpmath
import pytest

from pdmahler.characters import conrey, odd_characters, odd_primitive_of_conductor, quadratic_character
from pdmahler.lvalues import (d_chi, d_f, l2, l_prime_minus1, l_prime_via_functional_eq,
                              reduce_imprimitive)

PREC = 40
TOL = mpmath.mpf(10) ** (-PREC + 5)


def smyth(prec):
    # (3 sqrt 3 / 4 pi) L(chi_-3, 2), with L(chi_-3, 2) from the built-in Hurwitz zeta
    with mpmath.workdps(prec + 10):
        L = (mpmath.zeta(2, mpmath.mpf(1) / 3) - mpmath.zeta(2, mpmath.mpf(2) / 3)) / 9
        return 3 * mpmath.sqrt(3) / (4 * mpmath.pi) * L


def test_d3_is_smyth_constant():
    with mpmath.workdps(PREC + 10):
        assert abs(d_chi(conrey(3, 2), PREC) - smyth(PREC)) < TOL
        assert abs(d_f(3, PREC) - smyth(PREC)) < TOL
        assert abs(l_prime_minus1(conrey(3, 2), PREC) - mpmath.mpf("0.3230659472194505140936")) < 1e-20


def test_d4_is_two_over_pi_catalan():
    with mpmath.workdps(PREC + 10):
        want = 2 / mpmath.pi * mpmath.catalan
        assert abs(d_chi(conrey(4, 3), PREC) - want) < TOL
        assert abs(d_f(4, PREC) - want) < TOL
        assert abs(l_prime_via_functional_eq(conrey(4, 3), PREC) - want) < TOL
        assert abs(d_f(4, PREC) - mpmath.mpf("0.5831218080616375602767")) < 1e-20


def test_l2_examples():
    with mpmath.workdps(PREC + 10):
        assert abs(l2(conrey(4, 3), PREC) - mpmath.catalan) < TOL
        assert abs(l2(conrey(3, 2), PREC) - 4 * mpmath.pi / (3 * mpmath.sqrt(3)) * d_f(3, PREC)) < TOL
        chi = conrey(7, 3)
        assert abs(l2(chi.conjugate, PREC) - mpmath.conj(l2(chi, PREC))) < TOL


def test_imprimitive_example():
    with mpmath.workdps(PREC + 10):
        lhs = d_chi(conrey(10, 7), PREC)
        assert abs(lhs - (1 - 2j) * d_chi(conrey(5, 2), PREC)) < TOL
        assert abs(d_chi(conrey(20, 13), PREC) - (1 + 2j) * d_chi(conrey(5, 3), PREC)) < TOL
    red = reduce_imprimitive(conrey(20, 11), PREC)
    assert red.chi_star == conrey(4, 3)
    assert reduce_imprimitive(conrey(7, 3), PREC).gamma == 1


def test_domain_errors():
    with pytest.raises(ValueError):
        d_chi(conrey(5, 4), PREC)  # even
    with pytest.raises(ValueError):
        l_prime_minus1(conrey(10, 7), PREC)  # imprimitive
    with pytest.raises(ValueError):
        l2(conrey(7, 1), PREC)
    with pytest.raises(ValueError):
        reduce_imprimitive(conrey(13, 12), PREC)
    for f in (1, 2, 5, 12, 16):
        with pytest.raises(ValueError):
            d_f(f, PREC)


@pytest.mark.parametrize("f", [3, 4, 7, 8, 11, 15, 19, 20, 23, 24])
def test_d_f_is_d_chi_of_quadratic_character(f):
    chi = quadratic_character(-f)
    with mpmath.workdps(PREC + 10):
        v = d_chi(chi, PREC)
        assert abs(v.imag) < TOL
        assert abs(d_f(f, PREC) - v.real) < TOL


@pytest.mark.parametrize("k", range(3, 41))
def test_conjugation_and_imprimitive_reduction(k):
    with mpmath.workdps(PREC + 10):
        for chi in odd_characters(k):
            d = d_chi(chi, PREC)
            assert abs(d_chi(chi.conjugate, PREC) - mpmath.conj(d)) < TOL
            red = reduce_imprimitive(chi, PREC)
            assert abs(d - red.gamma.to_complex(PREC + 10) * d_chi(red.chi_star, PREC)) < TOL
            assert abs(d - red.beta * l2(chi.conjugate, PREC)) < TOL
            if chi.is_real:
                assert abs(d.imag) < TOL


@pytest.mark.parametrize("k", range(3, 41))
def test_functional_equation_route(k):
    with mpmath.workdps(PREC + 10):
        for chi in odd_primitive_of_conductor(k):
            assert abs(l_prime_minus1(chi, PREC) - l_prime_via_functional_eq(chi, PREC)) < TOL


def test_dirichlet_series_oracle_for_l2():
    # direct partial sums with the alternating-tail bound of the grouped series
    chi = conrey(5, 2)
    N = 20000
    with mpmath.workdps(30):
        partial = mpmath.fsum(chi.value(n, 30) / n**2 for n in range(1, N + 1))
        assert abs(l2(chi, 30) - partial) < 2.0 / N
