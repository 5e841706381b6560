"""Published decompositions and identities, encoded exactly for regression.

Radicals are written in the cyclotomic field of the character they multiply:

* Q(zeta_6):  sqrt(3) i = 2 z - 1
* Q(zeta_10): sqrt(5) = z^2 - z^4 - z^6 + z^8,  i sqrt(10 - 2 sqrt 5) = 2 (z^4 - z^6)
* Q(zeta_12): sqrt(3) = z + z^11,  i = z^3
* Q(zeta_16): sqrt(2) = z^2 + z^14,  sqrt(2 + sqrt 2) = z + z^15,
  i sqrt(2 - sqrt 2) = z - z^15,  i = z^4

A displayed ``Re(c L'(chi, -1))`` becomes c/2 on chi and conj(c)/2 on conj(chi);
``2 Re(c L'(chi, -1))`` becomes c on chi and conj(c) on conj(chi).

The constant printed as C_{17,12} is the coefficient of chi_17(11, .): 17.12 is
the conjugate of 17.10, which already appears, while the odd pair 17.11/17.14
would otherwise be missing.  ``verbatim=True`` keeps the printed label so the
discrepancy can be reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as F
from functools import lru_cache

from .characters import DirichletCharacter, parse_label
from .cyclo import Cyclo
from .polynomial import BivariatePoly

Terms = dict[DirichletCharacter, Cyclo]


def _z(n: int, e: int = 1) -> Cyclo:
    return Cyclo.root_of_unity(n, e)


def _q(x, n: int = 1) -> Cyclo:
    return Cyclo.rational(F(x), n)


# field elements -----------------------------------------------------------

I4 = _z(4)                                         # i in Q(zeta_4)
I8 = _z(8, 2)                                      # i in Q(zeta_8)
SQRT3I_6 = _z(6) * 2 - 1                           # sqrt(3) i in Q(zeta_6)
SQRT5_10 = _z(10, 2) - _z(10, 4) - _z(10, 6) + _z(10, 8)
ISQRT_10M2SQRT5 = (_z(10, 4) - _z(10, 6)) * 2      # i sqrt(10 - 2 sqrt 5)
SQRT3_12 = _z(12) + _z(12, 11)
I12 = _z(12, 3)
SQRT2_16 = _z(16, 2) + _z(16, 14)
SQRT_2P_16 = _z(16) + _z(16, 15)                   # sqrt(2 + sqrt 2)
ISQRT_2M_16 = _z(16) - _z(16, 15)                  # i sqrt(2 - sqrt 2)
I16 = _z(16, 4)


def _gi(a, b) -> Cyclo:
    """a + b i in Q(zeta_4)."""
    return _q(a, 4) + I4 * F(b)


def _gi8(a, b) -> Cyclo:
    return _q(a, 8) + I8 * F(b)


def _e3(a, b) -> Cyclo:
    """a + b sqrt(3) i in Q(zeta_6)."""
    return _q(a, 6) + SQRT3I_6 * F(b)


# Table 6 constants
C11_2 = (_q(51, 10) + SQRT5_10 * 21) / 55 + (SQRT5_10 * 3 - 21) * ISQRT_10M2SQRT5 / 110
C11_7 = (_q(51, 10) - SQRT5_10 * 21) / 55 + (SQRT5_10 * 6 + 9) * ISQRT_10M2SQRT5 / 55
C13_5 = _q(1, 12) + I12
C13_2 = (_q(10, 12) + SQRT3_12 * 4) / 13 - I12 * (SQRT3_12 * 6 + 2) / 13
C13_6 = (_q(10, 12) - SQRT3_12 * 4) / 13 + I12 * (SQRT3_12 * 6 - 2) / 13
C17_3 = ((_q(45, 16) + SQRT2_16 * 18 - (SQRT2_16 * 15 - 39) * SQRT_2P_16) / 68
         + (I16 * (SQRT2_16 * 21 + 27) - (SQRT2_16 * 6 + 15) * ISQRT_2M_16) / 68)
C17_5 = ((_q(45, 16) - SQRT2_16 * 18 - (SQRT2_16 * 24 - 9) * SQRT_2P_16) / 68
         + (I16 * (27 - SQRT2_16 * 21) - (SQRT2_16 * 9 + 3) * ISQRT_2M_16) / 68)
C17_10 = ((_q(45, 16) - SQRT2_16 * 18 + (SQRT2_16 * 24 - 9) * SQRT_2P_16) / 68
          + (I16 * (SQRT2_16 * 21 - 27) - (SQRT2_16 * 9 + 3) * ISQRT_2M_16) / 68)
C17_12 = ((_q(45, 16) + SQRT2_16 * 18 + (SQRT2_16 * 15 - 39) * SQRT_2P_16) / 68
          + (I16 * (-27 - SQRT2_16 * 21) - (SQRT2_16 * 6 + 15) * ISQRT_2M_16) / 68)

CONSTANTS = {
    "C_{11,2}": ("11.2", C11_2), "C_{11,7}": ("11.7", C11_7),
    "C_{13,5}": ("13.5", C13_5), "C_{13,2}": ("13.2", C13_2), "C_{13,6}": ("13.6", C13_6),
    "C_{17,3}": ("17.3", C17_3), "C_{17,5}": ("17.5", C17_5),
    "C_{17,10}": ("17.10", C17_10), "C_{17,12}": ("17.11", C17_12),
}
PRINTED_LABELS = {"C_{17,12}": "17.12"}


# term builders ------------------------------------------------------------

def real(label: str, q) -> Terms:
    chi = parse_label(label)
    return {chi: _q(q, chi.field_order)}


def re(label: str, c: Cyclo) -> Terms:
    """Re(c L'(chi, -1)) as a conjugate pair."""
    chi = parse_label(label)
    c = c.lift(chi.field_order) if chi.field_order % c.order == 0 else c
    return {chi: c / 2, chi.conjugate: c.conjugate() / 2}


def two_re(label: str, c: Cyclo) -> Terms:
    chi = parse_label(label)
    c = c.lift(chi.field_order) if chi.field_order % c.order == 0 else c
    return {chi: c, chi.conjugate: c.conjugate()}


def add(*parts: Terms, scale=1) -> Terms:
    out: Terms = {}
    for part in parts:
        for chi, c in part.items():
            out[chi] = out[chi] + c if chi in out else c
    return {chi: c * F(scale) for chi, c in out.items() if c}


def _s11_12(): return add(real("4.3", 21), real("3.2", 38))
def _re11(): return add(re("11.2", C11_2), re("11.7", C11_7))
def _re13(): return add(re("13.5", C13_5), re("13.2", C13_2), re("13.6", C13_6))
def _re17(verbatim=False):
    last = "17.12" if verbatim else "17.11"
    return add(re("17.3", C17_3), re("17.5", C17_5), re("17.10", C17_10), re(last, C17_12))


@lru_cache(maxsize=None)
def table1(verbatim: bool = False) -> dict[int, Terms]:
    """m(P_d) for 1 <= d <= 16 as published."""
    return {
        1: real("3.2", 1),
        2: add(real("4.3", 1), real("3.2", F(-1, 2))),
        3: add(re("5.2", _gi(F(9, 10), F(-3, 10))), real("4.3", F(-3, 5))),
        4: add(re("5.2", _gi(F(-3, 5), F(1, 5))), real("3.2", F(16, 5))),
        5: add(real("7.6", F(1, 3)), re("7.3", _e3(F(8, 21), F(-4, 21))), real("3.2", F(-16, 7))),
        6: add(real("8.3", F(3, 7)), real("7.6", F(-1, 4)), re("7.3", _e3(F(-2, 7), F(1, 7))),
               real("4.3", F(15, 14))),
        7: add(re("9.2", _e3(F(1, 2), F(-1, 6))), real("8.3", F(-1, 3)), real("4.3", F(-5, 6)),
               real("3.2", F(5, 6))),
        8: add(re("9.2", _e3(F(-2, 5), F(2, 15))), re("5.2", _gi(F(28, 15), F(-16, 15))),
               real("3.2", F(-2, 3))),
        9: add(add(_re11(), re("5.2", _gi(F(-84, 11), F(48, 11))), scale=F(1, 5)),
               real("11.10", F(3, 25))),
        10: add(add(_re11(), scale=F(-1, 6)), real("11.10", F(-1, 10)),
                add(_s11_12(), scale=F(1, 11))),
        11: add(add(_re13(), scale=F(1, 6)), add(_s11_12(), scale=F(-1, 13))),
        12: add(add(_re13(), scale=F(-1, 7)), re("7.3", _e3(F(92, 91), F(-60, 91))),
                real("7.6", F(4, 13))),
        13: add(real("15.14", F(3, 14)), re("7.3", _e3(F(-92, 105), F(60, 105))),
                real("7.6", F(-4, 15)), re("5.2", _gi(F(48, 35), F(-6, 35))), real("3.2", F(8, 7))),
        14: add(re("16.3", _gi8(F(1, 5), F(1, 5))), real("15.14", F(-3, 16)), real("8.3", F(1, 2)),
                re("5.2", _gi(F(-24, 20), F(3, 20))), real("4.3", F(21, 20)), real("3.2", -1)),
        15: add(add(_re17(verbatim), scale=F(1, 8)), re("16.3", _gi8(F(-3, 17), F(-3, 17))),
                real("8.3", F(-15, 34)), real("4.3", F(-63, 68))),
        16: add(add(_re17(verbatim), scale=F(-1, 9)), re("9.2", _e3(F(36, 51), F(-20, 51))),
                real("3.2", F(160, 51))),
    }


@lru_cache(maxsize=None)
def table5(verbatim: bool = False) -> dict[int, Terms]:
    """S_d / (2 pi) as published (the S_3 row's chi_{chi_-3} read as chi_-3,
    the S_20 row's chi_20 read as chi_-20)."""
    return {
        3: real("3.2", 2),
        4: real("4.3", 3),
        5: re("5.2", _gi(F(18, 5), F(-6, 5))),
        6: real("3.2", 16),
        7: add(real("7.6", 2), re("7.3", _e3(F(16, 7), F(-8, 7)))),
        8: add(real("4.3", F(15, 2)), real("8.3", 3)),
        9: add(re("9.2", _e3(4, F(-4, 3))), real("3.2", F(20, 3))),
        10: re("5.2", _gi(F(84, 5), F(-48, 5))),
        11: add(two_re("11.2", C11_2), two_re("11.7", C11_7), real("11.10", F(6, 5))),
        12: _s11_12(),
        13: add(two_re("13.5", C13_5), two_re("13.2", C13_2), two_re("13.6", C13_6)),
        14: add(re("7.3", _e3(F(92, 7), F(-60, 7))), real("7.6", 4)),
        15: add(re("5.2", _gi(F(96, 5), F(-12, 5))), real("15.14", 3), real("3.2", 16)),
        16: add(re("16.3", _gi8(3, 3)), real("8.3", F(15, 2)), real("4.3", F(63, 4))),
        17: add(two_re("17.3", C17_3), two_re("17.5", C17_5), two_re("17.10", C17_10),
                two_re("17.12" if verbatim else "17.11", C17_12)),
        18: add(re("9.2", _e3(12, F(-20, 3))), real("3.2", F(160, 3))),
        20: add(real("20.19", 3), re("5.2", _gi(F(192, 5), F(-114, 5))), real("4.3", 15)),
        24: add(real("24.5", 3), real("8.3", 9), real("4.3", F(105, 2)), real("3.2", 79)),
    }


# Ray's polynomials ---------------------------------------------------------

@dataclass(frozen=True)
class RayIdentity:
    """d_f = ratio * m(polynomial)."""

    f: int
    ratio: F
    polynomial: BivariatePoly


def _x(*coeffs) -> BivariatePoly:
    """Polynomial in x from coefficients lowest degree first."""
    return BivariatePoly({(i, 0): c for i, c in enumerate(coeffs)})


def _ray(core: BivariatePoly, f: int, mid: BivariatePoly) -> BivariatePoly:
    """core(x) (y - 1)^2 + f mid(x) y."""
    ym1_sq = BivariatePoly({(0, 2): 1, (0, 1): -2, (0, 0): 1})
    y = BivariatePoly({(0, 1): f})
    return core * ym1_sq + mid * y


@lru_cache(maxsize=None)
def ray_identities() -> tuple[RayIdentity, ...]:
    from .polynomial import ray_q7

    x2 = _x(0, 0, 1)
    x2m1_sq = _x(1, 0, -2, 0, 1)  # (x^2 - 1)^2
    return (
        RayIdentity(3, F(1), BivariatePoly.parse("x + y + 1")),
        # (x+1)^2 y^2 + (x-1)^2
        RayIdentity(4, F(1, 2), BivariatePoly.parse("y^2 + 2*x*y^2 + x^2*y^2 + 1 - 2*x + x^2")),
        RayIdentity(7, F(7, 8), ray_q7()),
        RayIdentity(8, F(1), _ray(_x(1, 0, 0, 0, 1), 8, x2)),
        RayIdentity(20, F(5, 2), _ray(_x(1, 0, -1, 0, 1, 0, -1, 0, 1), 20, x2 * x2m1_sq)),
        RayIdentity(24, F(3), _ray(_x(1, 0, 0, 0, -1, 0, 0, 0, 1), 24, x2 * x2m1_sq)),
    )
