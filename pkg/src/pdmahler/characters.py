"""Dirichlet characters in the Conrey labelling.

``conrey(q, n)`` is the character chi_q(n, .): built prime power by prime
power from fixed generators (the least primitive root g_p of p^2 for odd p,
and -1, 5 for powers of two) and combined multiplicatively over the
factorization of q.  Values are exact roots of unity in Q(zeta_phi(q)).
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd

import mpmath

from .arith import (divisors, euler_phi, factorize, kronecker, mobius,
                    multiplicative_order, units)
from .cyclo import Cyclo
from .precision import serialized

__all__ = [
    "DirichletCharacter", "conrey", "odd_characters", "odd_primitive_of_conductor",
    "gauss_sum", "gamma_coeff", "kronecker", "mobius", "euler_phi",
    "parse_label", "quadratic_character",
]


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Least positive integer that is a primitive root mod p^2 (so mod every p^e)."""
    if p == 2:
        raise ValueError("no cyclic generator for powers of two")
    p2 = p * p
    order = p * (p - 1)
    for g in range(2, p2):
        if g % p and multiplicative_order(g, p2) == order:
            return g
    raise ArithmeticError(f"no primitive root found for {p}")


@lru_cache(maxsize=None)
def _dlog_table(p: int, e: int) -> dict[int, int]:
    pe = p**e
    if p == 2:
        # m = eps * 5^a mod 2^e -> (a); eps handled separately
        table = {}
        x = 1
        for a in range(max(1, 2 ** (e - 2))):
            table[x] = a
            x = x * 5 % pe
        return table
    g = primitive_root(p)
    table = {}
    x = 1
    for a in range(euler_phi(pe)):
        table[x] = a
        x = x * g % pe
    return table


def _local_log(m: int, p: int, e: int) -> tuple[int, int]:
    """Coordinates of the unit m modulo p^e: (a,) or (eps_bit, a) for p = 2."""
    pe = p**e
    m %= pe
    if p != 2:
        return (0, _dlog_table(p, e)[m])
    if e == 1:
        return (0, 0)
    eps = 0 if m % 4 == 1 else 1
    if e == 2:
        return (eps, 0)
    base = m if eps == 0 else (-m) % pe
    return (eps, _dlog_table(2, e)[base])


def _local_pairing(n_log, m_log, p: int, e: int) -> Fraction:
    """chi_{p^e}(n, m) as a fraction of a full turn."""
    if p != 2:
        return Fraction(n_log[1] * m_log[1], euler_phi(p**e))
    if e == 1:
        return Fraction(0)
    val = Fraction(n_log[0] * m_log[0], 2)  # (1-eps_a)(1-eps_b)/8 with eps in {+1,-1}
    if e >= 3:
        val += Fraction(n_log[1] * m_log[1], 2 ** (e - 2))
    return val % 1


class DirichletCharacter:
    """chi_q(n, .) in the Conrey labelling; immutable."""

    def __init__(self, modulus: int, index: int):
        if modulus < 1:
            raise ValueError(f"modulus must be positive, got {modulus}")
        if not 1 <= index < max(modulus, 2) or gcd(index, modulus) != 1:
            raise ValueError(f"invalid Conrey index {index} for modulus {modulus}")
        self.modulus = modulus
        self.index = index
        self._factors = factorize(modulus) if modulus > 1 else ()
        self._n_logs = tuple(_local_log(index, p, e) for p, e in self._factors)

    # -- evaluation ------------------------------------------------------
    @cached_property
    def field_order(self) -> int:
        """Values live in Q(zeta_field_order), field_order = phi(q)."""
        return euler_phi(self.modulus)

    def log_value(self, m: int) -> int | None:
        """Exponent e with chi(m) = zeta_phi(q)^e, or None if gcd(m, q) > 1."""
        if gcd(m, self.modulus) != 1:
            return None
        turn = Fraction(0)
        for (p, e), n_log in zip(self._factors, self._n_logs):
            turn += _local_pairing(n_log, _local_log(m, p, e), p, e)
        turn %= 1
        N = self.field_order
        exp = turn * N
        assert exp.denominator == 1
        return int(exp)

    def __call__(self, m: int) -> Cyclo:
        e = self.log_value(m)
        if e is None:
            return Cyclo.rational(0, self.field_order)
        return Cyclo.root_of_unity(self.field_order, e)

    eval = __call__

    @serialized
    def value(self, m: int, prec: int = 30) -> mpmath.mpc:
        """Numeric value chi(m)."""
        e = self.log_value(m)
        with mpmath.workdps(prec + 10):
            v = mpmath.mpc(0) if e is None else mpmath.expjpi(mpmath.mpf(2 * e) / self.field_order)
        with mpmath.workdps(prec):
            return +v

    @cached_property
    def _unit_logs(self) -> dict[int, int]:
        return {a: self.log_value(a) for a in units(self.modulus)}

    # -- invariants ------------------------------------------------------
    @cached_property
    def is_odd(self) -> bool:
        if self.modulus <= 2:
            return False
        return self.log_value(self.modulus - 1) != 0

    @property
    def parity(self) -> int:
        return -1 if self.is_odd else 1

    @cached_property
    def order(self) -> int:
        N = self.field_order
        g = N
        for e in self._unit_logs.values():
            g = gcd(g, e)
        return N // g

    @property
    def is_real(self) -> bool:
        return self.order <= 2

    @property
    def is_principal(self) -> bool:
        return self.order == 1

    @cached_property
    def conductor(self) -> int:
        q = self.modulus
        logs = self._unit_logs
        for c in divisors(q):
            if all(logs[a] == 0 for a in logs if a % c == 1 % c):
                return c
        return q

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @cached_property
    def primitive(self) -> "DirichletCharacter":
        """The primitive character chi* inducing self."""
        c = self.conductor
        if c == self.modulus:
            return self
        if c == 1:
            return DirichletCharacter(1, 1)
        q = self.modulus
        # lift each unit class mod c to a representative coprime to q
        lifts = {}
        for a in units(c):
            m = a
            while gcd(m, q) != 1:
                m += c
            lifts[a] = m
        target = {a: self.value_turn(m) for a, m in lifts.items()}
        for n in units(c):
            cand = DirichletCharacter(c, n)
            if all(cand.value_turn(a) == t for a, t in target.items()):
                return cand
        raise ArithmeticError(f"no primitive character induces {self.label}")

    def value_turn(self, m: int) -> Fraction | None:
        """chi(m) as a fraction of a full turn (None off the units)."""
        e = self.log_value(m)
        return None if e is None else Fraction(e, self.field_order)

    @cached_property
    def conjugate(self) -> "DirichletCharacter":
        if self.modulus == 1:
            return self
        return DirichletCharacter(self.modulus, pow(self.index, -1, self.modulus))

    @property
    def label(self) -> str:
        return f"{self.modulus}.{self.index}"

    # -- protocol --------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return (self.modulus, self.index) == (other.modulus, other.index)

    def __hash__(self):
        return hash((self.modulus, self.index))

    def __lt__(self, other):
        return (self.modulus, self.index) < (other.modulus, other.index)

    def __repr__(self):
        return f"DirichletCharacter({self.modulus}, {self.index})"

    def __str__(self):
        return f"chi_{self.modulus}({self.index},.)"


@lru_cache(maxsize=None)
def conrey(q: int, n: int) -> DirichletCharacter:
    return DirichletCharacter(q, n)


def parse_label(label: str) -> DirichletCharacter:
    """Parse an LMFDB label ``q.n``."""
    try:
        q, n = (int(part) for part in label.strip().split("."))
    except ValueError:
        raise ValueError(f"malformed character label {label!r}; expected 'q.n'") from None
    return conrey(q, n)


def characters_mod(q: int) -> list[DirichletCharacter]:
    return [conrey(q, n) for n in units(q)]


def odd_characters(q: int) -> list[DirichletCharacter]:
    return [chi for chi in characters_mod(q) if chi.is_odd]


@lru_cache(maxsize=None)
def _odd_primitive(k: int) -> tuple[DirichletCharacter, ...]:
    if k <= 2 or k % 4 == 2:
        return ()
    return tuple(chi for chi in odd_characters(k) if chi.conductor == k)


def odd_primitive_of_conductor(k: int) -> list[DirichletCharacter]:
    """Primitive odd characters of conductor exactly k, sorted by Conrey index."""
    return list(_odd_primitive(k))


def induce_primitive(chi: DirichletCharacter) -> DirichletCharacter:
    return chi.primitive


@lru_cache(maxsize=None)
def quadratic_character(D: int) -> DirichletCharacter:
    """The Conrey character mod |D| agreeing with kronecker(D, .) on all residues."""
    q = abs(D)
    for chi in characters_mod(q):
        if chi.order > 2:
            continue
        if all(chi.log_value(m) is None if kronecker(D, m) == 0
               else (chi.log_value(m) == 0) == (kronecker(D, m) == 1)
               for m in range(q)):
            return chi
    raise ValueError(f"kronecker({D}, .) is not a character mod {q}")


@serialized
def gauss_sum(chi: DirichletCharacter, prec: int = 50) -> mpmath.mpc:
    """tau(chi) = sum_{a=1}^{q} chi(a) exp(2 pi i a / q)."""
    q = chi.modulus
    N = chi.field_order
    with mpmath.workdps(prec + 10):
        total = mpmath.mpc(0)
        for a in units(q):
            e = chi.log_value(a)
            # chi(a) e(a/q) = exp(2 pi i (e/N + a/q))
            total += mpmath.expjpi(2 * (mpmath.mpf(e) / N + mpmath.mpf(a) / q))
    with mpmath.workdps(prec):
        return +total


def gamma_coeff(chi: DirichletCharacter) -> Cyclo:
    """gamma = sum_{d | k/c} d mu(d) chi*(d), exact in Q(zeta_phi(c))."""
    star = chi.primitive
    q = chi.modulus // star.modulus
    total = Cyclo.rational(0, star.field_order)
    for d in divisors(q):
        mu = mobius(d)
        if mu:
            total = total + star(d) * (d * mu)
    return total
