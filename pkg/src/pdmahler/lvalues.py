"""d_chi, L(chi, 2) and L'(chi, -1) for odd Dirichlet characters.

Two independent routes to L'(chi, -1) for primitive odd chi:

* the dilogarithm sum  d_chi = (k / 4 pi) sum_m chi(m) D(exp(2 pi i m / k)),
* the functional equation  L'(chi, -1) = (-i k tau(chi) / 4 pi) L(conj chi, 2)
  with L(., 2) from Hurwitz zeta values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .arith import factorize, is_fundamental_discriminant, units
from .characters import DirichletCharacter, gamma_coeff, gauss_sum, quadratic_character
from .cyclo import Cyclo
from .dilog import GUARD, _check_prec, clausen2, hurwitz_zeta
from .precision import serialized


def _require_odd(chi: DirichletCharacter) -> None:
    if not chi.is_odd:
        raise ValueError(f"{chi.label} is even; d_chi is only defined for odd characters")


def _require_primitive_odd(chi: DirichletCharacter) -> None:
    _require_odd(chi)
    if not chi.is_primitive:
        raise ValueError(f"{chi.label} is imprimitive (conductor {chi.conductor})")


@serialized
def d_chi(chi: DirichletCharacter, prec: int = 50) -> mpmath.mpc:
    """(k / 4 pi) sum_{m=1}^{k-1} chi(m) Cl2(2 pi m / k)."""
    prec = _check_prec(prec)
    _require_odd(chi)
    k = chi.modulus
    wp = prec + GUARD
    with mpmath.workdps(wp):
        total = mpmath.mpc(0)
        for m in units(k):
            total += chi.value(m, wp) * clausen2(m, k, wp)
        val = total * k / (4 * mpmath.pi)
    with mpmath.workdps(prec):
        return +val


def l_prime_minus1(chi: DirichletCharacter, prec: int = 50) -> mpmath.mpc:
    """L'(chi, -1) for primitive odd chi, via the dilogarithm sum."""
    _require_primitive_odd(chi)
    return d_chi(chi, prec)


@serialized
def l2(chi: DirichletCharacter, prec: int = 50) -> mpmath.mpc:
    """L(chi, 2) = k^-2 sum_{a=1}^{k} chi(a) zeta(2, a/k)."""
    prec = _check_prec(prec)
    if chi.is_principal:
        raise ValueError("l2 is only implemented for non-principal characters")
    k = chi.modulus
    wp = prec + GUARD
    with mpmath.workdps(wp):
        total = mpmath.mpc(0)
        for a in units(k):
            total += chi.value(a, wp) * hurwitz_zeta(2, Fraction(a, k), wp)
        val = total / (k * k)
    with mpmath.workdps(prec):
        return +val


@serialized
def l_prime_via_functional_eq(chi: DirichletCharacter, prec: int = 50) -> mpmath.mpc:
    """L'(chi, -1) = (-i k tau(chi) / 4 pi) L(conj chi, 2) for primitive odd chi."""
    prec = _check_prec(prec)
    _require_primitive_odd(chi)
    k = chi.modulus
    wp = prec + GUARD
    with mpmath.workdps(wp):
        val = -1j * k * gauss_sum(chi, wp) / (4 * mpmath.pi) * l2(chi.conjugate, wp)
    with mpmath.workdps(prec):
        return +val


@dataclass(frozen=True)
class ImprimitiveReduction:
    """d_chi = gamma * d_{chi*} = beta * L(conj chi, 2)."""

    chi: DirichletCharacter
    chi_star: DirichletCharacter
    gamma: Cyclo
    beta: mpmath.mpc


@serialized
def reduce_imprimitive(chi: DirichletCharacter, prec: int = 50) -> ImprimitiveReduction:
    prec = _check_prec(prec)
    _require_odd(chi)
    star = chi.primitive
    gamma = gamma_coeff(chi)
    k, c = chi.modulus, star.modulus
    wp = prec + GUARD
    with mpmath.workdps(wp):
        euler = mpmath.mpc(1)
        for p, _ in factorize(k):
            euler *= 1 - mpmath.conj(star.value(p, wp)) / (p * p)
        beta = -1j * gamma.to_complex(wp) * c * gauss_sum(star, wp) / (4 * mpmath.pi * euler)
    with mpmath.workdps(prec):
        beta = +beta
    return ImprimitiveReduction(chi=chi, chi_star=star, gamma=gamma, beta=beta)


def d_f(f: int, prec: int = 50) -> mpmath.mpf:
    """Boyd's d_f = L'(chi_{-f}, -1) for a fundamental discriminant -f."""
    if not is_fundamental_discriminant(-f):
        raise ValueError(f"-{f} is not a fundamental discriminant")
    return d_chi(quadratic_character(-f), prec).real
