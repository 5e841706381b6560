"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element is stored by its rational coordinates on the power basis
``1, z, ..., z^(deg-1)`` of Q(z) with z = exp(2*pi*i/n), reduced modulo the
n-th cyclotomic polynomial.  Elements of different orders are combined by
lifting both to the lcm order.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational
from typing import Iterable, Sequence

import mpmath

from .arith import divisors
from .precision import serialized


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _poly_divmod_exact(num: list[int], den: list[int]) -> list[int]:
    # integer polynomials, lowest degree first, den monic; remainder must vanish
    num = num[:]
    dn = len(den) - 1
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            quot[i - dn] = c
            for j, dc in enumerate(den):
                num[i - dn + j] -= c * dc
    if any(num[:dn]):
        raise ArithmeticError("inexact cyclotomic division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n):
        if d < n:
            poly = _poly_divmod_exact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def _reduce(raw: Sequence, n: int) -> tuple[Fraction, ...]:
    """Reduce a coefficient list (any length) modulo Phi_n."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    buf = [Fraction(c) for c in raw]
    for i in range(len(buf) - 1, deg - 1, -1):
        c = buf[i]
        if c:
            buf[i] = Fraction(0)
            for j in range(deg):
                if phi[j]:
                    buf[i - deg + j] -= c * phi[j]
    buf += [Fraction(0)] * (deg - len(buf))
    return tuple(buf[:deg])


@lru_cache(maxsize=None)
def _root_power(n: int, e: int) -> tuple[Fraction, ...]:
    e %= n
    return _reduce([0] * e + [1], n)


@lru_cache(maxsize=None)
def _descent_matrix(m: int, n: int) -> tuple[tuple[Fraction, ...], ...]:
    # rows: image in Q(zeta_n) of the power basis of Q(zeta_m), m | n
    step = n // m
    deg_m = len(cyclotomic_poly(m)) - 1
    return tuple(_root_power(n, i * step) for i in range(deg_m))


class Cyclo:
    """An element of Q(zeta_n) with exact rational coordinates."""

    __slots__ = ("order", "coords")

    def __init__(self, order: int, coords: Iterable = ()):
        if order < 1:
            raise ValueError("cyclotomic order must be positive")
        self.order = order
        self.coords = _reduce(list(coords), order)

    # -- constructors -------------------------------------------------
    @classmethod
    def _raw(cls, order: int, coords: tuple[Fraction, ...]) -> "Cyclo":
        obj = cls.__new__(cls)
        obj.order = order
        obj.coords = coords
        return obj

    @classmethod
    def rational(cls, value, order: int = 1) -> "Cyclo":
        deg = len(cyclotomic_poly(order)) - 1
        return cls._raw(order, (Fraction(value),) + (Fraction(0),) * (deg - 1))

    @classmethod
    def root_of_unity(cls, order: int, exponent: int) -> "Cyclo":
        """zeta_order ** exponent."""
        return cls._raw(order, _root_power(order, exponent))

    @classmethod
    def from_exponent_sums(cls, order: int, weights: Sequence) -> "Cyclo":
        """sum_e weights[e] * zeta_order**e for a length-``order`` weight vector."""
        return cls(order, weights)

    # -- structure ----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coords)

    def lift(self, order: int) -> "Cyclo":
        """Same element viewed in Q(zeta_order); ``self.order`` must divide it."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"Q(zeta_{self.order}) is not contained in Q(zeta_{order})")
        step = order // self.order
        raw = [Fraction(0)] * (step * (self.degree - 1) + 1)
        for i, c in enumerate(self.coords):
            raw[i * step] = c
        return Cyclo(order, raw)

    def descend(self, order: int) -> "Cyclo":
        """Express in Q(zeta_order) for ``order | self.order``; raises if impossible."""
        if order == self.order:
            return self
        if self.order % order:
            raise ValueError(f"Q(zeta_{order}) is not a subfield of Q(zeta_{self.order})")
        from .linalg import solve_left

        rows = _descent_matrix(order, self.order)
        sol = solve_left(rows, self.coords)
        if sol is None:
            raise ValueError(f"element does not lie in Q(zeta_{order})")
        return Cyclo._raw(order, tuple(sol))

    def minimal_order(self) -> int:
        """Least m | order (up to the n ~ 2n identification) with self in Q(zeta_m)."""
        for m in divisors(self.order):
            try:
                self.descend(m)
            except ValueError:
                continue
            return m
        return self.order

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> tuple["Cyclo", "Cyclo"]:
        if isinstance(other, (int, Rational)):
            other = Cyclo.rational(other, self.order)
        if not isinstance(other, Cyclo):
            return NotImplemented
        if other.order == self.order:
            return self, other
        n = _lcm(self.order, other.order)
        return self.lift(n), other.lift(n)

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return Cyclo._raw(a.order, tuple(x + y for x, y in zip(a.coords, b.coords)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclo._raw(self.order, tuple(-x for x in self.coords))

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return Cyclo._raw(a.order, tuple(x - y for x, y in zip(a.coords, b.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            q = Fraction(other)
            return Cyclo._raw(self.order, tuple(x * q for x in self.coords))
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        raw = [Fraction(0)] * (a.degree + b.degree - 1)
        for i, x in enumerate(a.coords):
            if x:
                for j, y in enumerate(b.coords):
                    if y:
                        raw[i + j] += x * y
        return Cyclo(a.order, raw)

    __rmul__ = __mul__

    def times_root(self, exponent: int) -> "Cyclo":
        """self * zeta_order**exponent, by rotation of the raw exponent vector."""
        n = self.order
        raw = [Fraction(0)] * n
        for i, x in enumerate(self.coords):
            if x:
                raw[(i + exponent) % n] += x
        return Cyclo(n, raw)

    def conjugate(self) -> "Cyclo":
        n = self.order
        raw = [Fraction(0)] * n
        for i, x in enumerate(self.coords):
            if x:
                raw[(-i) % n] += x
        return Cyclo(n, raw)

    def inverse(self) -> "Cyclo":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        from .linalg import solve_left

        # rows: self * z^i; solve y . rows = 1
        rows = [self.times_root(i).coords for i in range(self.degree)]
        one = Cyclo.rational(1, self.order).coords
        sol = solve_left(rows, one)
        return Cyclo._raw(self.order, tuple(sol))

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            q = Fraction(other)
            return Cyclo._raw(self.order, tuple(x / q for x in self.coords))
        if isinstance(other, Cyclo):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.coords[0] == other
        if not isinstance(other, Cyclo):
            return NotImplemented
        a, b = self._coerce(other)
        return a.coords == b.coords

    __hash__ = None  # equality crosses orders, so no stable hash

    # -- embedding / display ------------------------------------------
    @serialized
    def to_complex(self, prec: int = 30) -> mpmath.mpc:
        with mpmath.workdps(prec + 10):
            z = mpmath.expjpi(mpmath.mpf(2) / self.order)
            acc = mpmath.mpc(0)
            power = mpmath.mpc(1)
            for c in self.coords:
                if c:
                    acc += mpmath.mpf(c.numerator) / c.denominator * power
                power *= z
        with mpmath.workdps(prec):
            return +acc

    def __complex__(self) -> complex:
        return complex(self.to_complex(20))

    def format(self, var: str = "z") -> str:
        terms = []
        for i, c in enumerate(self.coords):
            if not c:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.coords[0])
        return f"({self.format()}) [z=zeta_{self.order}]"

    def __repr__(self) -> str:
        return f"Cyclo({self.order}, {[str(c) for c in self.coords]})"

    def to_dict(self) -> dict:
        return {"order": self.order, "coords": [str(c) for c in self.coords]}

    @classmethod
    def from_dict(cls, data: dict) -> "Cyclo":
        return cls(int(data["order"]), [Fraction(c) for c in data["coords"]])
