"""Dilogarithm, Bloch-Wigner dilogarithm and Clausen function at arbitrary precision.

Real and complex scalars are mpmath ``mpf``/``mpc`` values.  Every public
function takes ``prec`` (decimal digits), works internally with ten guard
digits and rounds the result to ``prec`` digits.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath
from mpmath import mp

from .precision import serialized

GUARD = 10
MIN_PREC = 15


class BranchCutError(ValueError):
    """Raised when Li2 is evaluated on its branch cut (1, +inf)."""


def _check_prec(prec: int) -> int:
    if prec < MIN_PREC:
        raise ValueError(f"precision must be at least {MIN_PREC} digits, got {prec}")
    return int(prec)


def _round(x, prec: int):
    with mpmath.workdps(prec):
        return +x


# -- Li2 ---------------------------------------------------------------

def _li2_series(z):
    # |z| <= 1/2: plain power series
    eps = mpmath.eps
    total = mpmath.mpc(0)
    power = mpmath.mpc(z)
    n = 1
    while True:
        term = power / (n * n)
        total += term
        if abs(term) < eps * abs(total) or abs(power) < eps:
            break
        n += 1
        power *= z
    return total


def _li2_bernoulli(z):
    # Li2(z) = sum_{n>=0} B_n u^(n+1)/(n+1)!, u = -log(1-z), |u| < 2*pi
    u = -mpmath.log(1 - z)
    eps = mpmath.eps
    total = u - u * u / 4
    u2 = u * u
    power = u * u2  # u^(2k+1) for k = 1
    fact = mpmath.mpf(6)  # (2k+1)!
    k = 1
    while True:
        term = mpmath.bernoulli(2 * k) * power / fact
        total += term
        if abs(term) < eps * abs(total):
            break
        power *= u2
        fact *= (2 * k + 2) * (2 * k + 3)
        k += 1
        if k > 10 * mp.dps + 100:
            raise ArithmeticError("Bernoulli series for Li2 failed to converge")
    return total


def _li2(z):
    z = mpmath.mpc(z)
    if z == 0:
        return mpmath.mpc(0)
    if z == 1:
        return mpmath.mpc(mpmath.pi ** 2 / 6)
    if z.imag == 0 and z.real > 1:
        raise BranchCutError(f"Li2 is not defined on the branch cut: z = {z}")
    r = abs(z)
    half = mpmath.mpf(1) / 2
    if r <= half:
        return _li2_series(z)
    if r > 1:
        w = -z
        return -_li2(1 / z) - mpmath.pi ** 2 / 6 - mpmath.log(w) ** 2 / 2
    if abs(1 - z) <= half:
        return mpmath.pi ** 2 / 6 - mpmath.log(z) * mpmath.log(1 - z) - _li2_series(1 - z)
    # neither reflection nor inversion reaches |w| <= 1/2 (e.g. near exp(i*pi/3))
    return _li2_bernoulli(z)


@serialized
def li2(z, prec: int = 50) -> mpmath.mpc:
    """Principal branch of the dilogarithm Li2(z)."""
    prec = _check_prec(prec)
    with mpmath.workdps(prec + GUARD):
        val = _li2(mpmath.mpc(z))
    return _round(val, prec)


# -- Bloch-Wigner ------------------------------------------------------

def _bloch_wigner(z):
    z = mpmath.mpc(z)
    if z.imag == 0:
        return mpmath.mpf(0)
    if abs(z) > 1:
        return -_bloch_wigner(1 / z)
    return _li2(z).imag + mpmath.arg(1 - z) * mpmath.log(abs(z))


@serialized
def bloch_wigner(z, prec: int = 50) -> mpmath.mpf:
    """D(z) = Im Li2(z) + Arg(1 - z) log|z|; zero on the real line."""
    prec = _check_prec(prec)
    with mpmath.workdps(prec + GUARD):
        val = _bloch_wigner(z)
    return _round(val, prec)


# -- Hurwitz zeta (Euler-Maclaurin) -------------------------------------

def _hurwitz_zeta(s: int, a):
    """zeta(s, a) for integer s >= 2 and a > 0 at the current working precision."""
    dps = mp.dps
    N = max(10, dps)
    M = dps // 2 + 5
    a = mpmath.mpf(a)
    head = mpmath.fsum(mpmath.power(n + a, -s) for n in range(N))
    x = N + a
    tail = mpmath.power(x, 1 - s) / (s - 1) + mpmath.power(x, -s) / 2
    # sum_j B_2j/(2j)! * s(s+1)...(s+2j-2) * x^(-s-2j+1)
    rising = mpmath.mpf(s)  # s (s+1) ... (s+2j-2), j = 1
    fact = mpmath.mpf(2)
    xpow = mpmath.power(x, -s - 1)
    x2 = x * x
    for j in range(1, M + 1):
        tail += mpmath.bernoulli(2 * j) / fact * rising * xpow
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        fact *= (2 * j + 1) * (2 * j + 2)
        xpow /= x2
    return head + tail


@lru_cache(maxsize=65536)
def _hurwitz_cached(s: int, a: Fraction, dps: int):
    with mpmath.workdps(dps):
        return _hurwitz_zeta(s, mpmath.mpf(a.numerator) / a.denominator)


@serialized
def hurwitz_zeta(s: int, a, prec: int = 50) -> mpmath.mpf:
    """Hurwitz zeta(s, a) = sum_{n>=0} (n+a)^-s for integer s >= 2 and a > 0.

    Rational ``a`` (int or Fraction) is memoised per working precision.
    """
    prec = _check_prec(prec)
    if s < 2:
        raise ValueError("only s >= 2 is supported")
    if isinstance(a, (int, Fraction)):
        a = Fraction(a)
        if a <= 0:
            raise ValueError("Hurwitz zeta needs a > 0")
        return _round(_hurwitz_cached(s, a, prec + GUARD), prec)
    with mpmath.workdps(prec + GUARD):
        val = _hurwitz_zeta(s, a)
    return _round(val, prec)


def zeta3(prec: int = 50) -> mpmath.mpf:
    return hurwitz_zeta(3, 1, prec)


# -- Clausen ----------------------------------------------------------

@lru_cache(maxsize=65536)
def _clausen_cached(j: int, k: int, dps: int):
    # j/k in lowest terms, 0 < j < k
    with mpmath.workdps(dps):
        total = mpmath.mpf(0)
        for a in range(1, k):
            s = mpmath.sinpi(mpmath.mpf(2 * a * j % (2 * k)) / k)
            if s:
                total += s * _hurwitz_cached(2, Fraction(a, k), dps)
        return total / (k * k)


@serialized
def clausen2(j: int, k: int, prec: int = 50) -> mpmath.mpf:
    """Cl2(2*pi*j/k) = D(exp(2*pi*i*j/k)) for 0 <= j < k.

    Groups the Fourier series by residue class:
    Cl2(2 pi j/k) = k^-2 sum_{a=1}^{k} sin(2 pi a j/k) zeta(2, a/k).
    """
    prec = _check_prec(prec)
    if k < 1 or not 0 <= j < k:
        raise ValueError(f"clausen2 needs 0 <= j < k, got j={j}, k={k}")
    g = gcd(j, k)
    j, k = j // g, k // g
    if j == 0 or 2 * j == k:
        return _round(mpmath.mpf(0), prec)
    if 2 * j > k:
        return -clausen2(k - j, k, prec)
    return _round(_clausen_cached(j, k, prec + GUARD), prec)
