"""Exact decomposition of S_d/(2 pi) and m(P_d) over primitive odd characters.

For each divisor k >= 3 of d, the weights (d - 2 m) at the k-th roots of unity
restrict to the odd function j -> (d/k)(k - 2j) on units mod k.  Orthogonality
expands it over odd characters mod k, each d_chi is pushed down to its
primitive character with the gamma factor, and terms are merged per primitive
character.  All coefficients are exact cyclotomic numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

import mpmath

from .arith import divisors, euler_phi, units
from .characters import DirichletCharacter, gamma_coeff, odd_characters, parse_label, quadratic_character
from .cyclo import Cyclo
from .dilog import GUARD, _check_prec
from .lvalues import l_prime_minus1
from .precision import serialized


@dataclass(frozen=True)
class OddRestriction:
    d: int
    k: int
    values: Mapping[int, Fraction]

    def is_odd(self) -> bool:
        return all(self.values[self.k - j] == -v for j, v in self.values.items())


def restrict(d: int, k: int) -> OddRestriction:
    if k < 3:
        raise ValueError("restriction needs k >= 3")
    if d % k:
        raise ValueError(f"{k} does not divide {d}")
    scale = Fraction(d, k)
    return OddRestriction(d, k, {j: scale * (k - 2 * j) for j in units(k)})


def decompose_restriction(r: OddRestriction) -> dict[DirichletCharacter, Cyclo]:
    """c_chi = (1/phi(k)) sum_j value(j) conj(chi(j)) over odd chi mod k; zeros dropped."""
    k = r.k
    n = euler_phi(k)
    out = {}
    for chi in odd_characters(k):
        weights = [Fraction(0)] * n
        for j, v in r.values.items():
            if v:
                weights[-chi.log_value(j) % n] += v
        c = Cyclo.from_exponent_sums(n, weights) / n
        if c:
            out[chi] = c
    return out


# -- decompositions ------------------------------------------------------

@dataclass(frozen=True)
class Subject:
    """What a decomposition expands: 'sd' (S_d / 2 pi), 'mpd' (m(P_d)) or 'aux'."""

    kind: str
    d: int = 0
    name: str = ""

    def __post_init__(self):
        if self.kind not in ("sd", "mpd", "aux"):
            raise ValueError(f"unknown subject kind {self.kind!r}")

    def describe(self) -> str:
        if self.kind == "sd":
            return f"S_{self.d}/(2pi)"
        if self.kind == "mpd":
            return f"m(P_{self.d})"
        return f"m({self.name})"

    def to_dict(self) -> dict:
        if self.kind == "aux":
            return {"kind": "aux", "name": self.name}
        return {"kind": self.kind, "d": self.d}

    @classmethod
    def from_dict(cls, data: Mapping) -> "Subject":
        return cls(data["kind"], int(data.get("d", 0)), data.get("name", ""))


@dataclass(frozen=True)
class PrimitiveDecomposition:
    """subject = sum coeff(chi) * L'(chi, -1) over primitive odd chi."""

    subject: Subject
    terms: Mapping[DirichletCharacter, Cyclo] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", {chi: c for chi, c in self.terms.items() if c})

    def __getitem__(self, chi: DirichletCharacter) -> Cyclo:
        c = self.terms.get(chi)
        return Cyclo.rational(0, chi.field_order) if c is None else c

    def characters(self) -> list[DirichletCharacter]:
        return sorted(self.terms)

    def is_conjugation_closed(self) -> bool:
        return all(self[chi.conjugate] == c.conjugate() for chi, c in self.terms.items())

    def to_dict(self) -> dict:
        return {
            "subject": self.subject.to_dict(),
            "terms": [{"character_label": chi.label, "coefficient": self.terms[chi].to_dict()}
                      for chi in self.characters()],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "PrimitiveDecomposition":
        terms = {}
        for t in data["terms"]:
            chi = parse_label(t["character_label"])
            if not (chi.is_primitive and chi.is_odd):
                raise ValueError(f"{chi.label} is not a primitive odd character")
            terms[chi] = Cyclo.from_dict(t["coefficient"])
        return cls(Subject.from_dict(data["subject"]), terms)


def _merge(parts, subject: Subject) -> PrimitiveDecomposition:
    """Sum (scale, decomposition) pairs exactly and normalise each coefficient
    to the value field Q(zeta_phi(c)) of its character."""
    acc: dict[DirichletCharacter, Cyclo] = {}
    for scale, terms in parts:
        for chi, c in terms.items():
            acc[chi] = acc[chi] + c * scale if chi in acc else c * scale
    out = {}
    for chi, c in acc.items():
        if c.is_zero():
            continue
        target = chi.field_order
        out[chi] = c.descend(target) if c.order % target == 0 else c
    return PrimitiveDecomposition(subject, out)


@lru_cache(maxsize=None)
def _sd_terms(d: int) -> tuple[tuple[DirichletCharacter, Cyclo], ...]:
    acc: dict[DirichletCharacter, Cyclo] = {}
    for k in divisors(d):
        if k < 3:
            continue
        for chi, c in decompose_restriction(restrict(d, k)).items():
            # 3 (4 pi / k) / (2 pi) = 6 / k, and d_chi = gamma * L'(chi*, -1)
            term = c * gamma_coeff(chi) * Fraction(6, k)
            star = chi.primitive
            acc[star] = acc[star] + term if star in acc else term
    return tuple(acc.items())


def decompose_sd(d: int) -> PrimitiveDecomposition:
    """S_d / (2 pi) as a combination of L'(chi, -1)."""
    if d < 1:
        raise ValueError("S_d needs d >= 1")
    return _merge([(1, dict(_sd_terms(d)))], Subject("sd", d))


def decompose_mpd(d: int) -> PrimitiveDecomposition:
    """m(P_d) = S_{d+2} / (2 pi (d+1)) - S_{d+1} / (2 pi (d+2))."""
    if d < 1:
        raise ValueError("P_d needs d >= 1")
    return _merge(
        [(Fraction(1, d + 1), dict(_sd_terms(d + 2))), (Fraction(-1, d + 2), dict(_sd_terms(d + 1)))],
        Subject("mpd", d),
    )


def combine(parts: Mapping[str, int] | list, subject: Subject) -> PrimitiveDecomposition:
    """Integer combination of basis decompositions ('P<d>' or auxiliary names)."""
    from .mahler import parse_basis_id

    items = parts.items() if isinstance(parts, Mapping) else parts
    pieces = []
    for name, e in items:
        key = parse_basis_id(name)
        dec = decompose_mpd(key) if isinstance(key, int) else auxiliary_decomposition(key)
        pieces.append((e, dec.terms))
    return _merge(pieces, subject)


# -- auxiliaries -----------------------------------------------------------

def _ray_q7() -> PrimitiveDecomposition:
    return PrimitiveDecomposition(Subject("aux", name="RayQ7"),
                                  {quadratic_character(-7): Cyclo.rational(Fraction(8, 7))})


_AUXILIARIES = {"RayQ7": _ray_q7}


def auxiliary_names() -> list[str]:
    return sorted(_AUXILIARIES)


def auxiliary_decomposition(name: str) -> PrimitiveDecomposition:
    try:
        return _AUXILIARIES[name]()
    except KeyError:
        raise KeyError(f"unknown basis element {name!r}; known auxiliaries: {auxiliary_names()}") from None


# -- numerics --------------------------------------------------------------

@lru_cache(maxsize=4096)
def _lprime(chi: DirichletCharacter, dps: int) -> mpmath.mpc:
    return l_prime_minus1(chi, dps)


@serialized
def evaluate_decomposition(dec: PrimitiveDecomposition, prec: int = 50) -> mpmath.mpc:
    """sum embed(coeff) * L'(chi, -1)."""
    wp = _check_prec(prec) + GUARD
    with mpmath.workdps(wp):
        total = mpmath.mpc(0)
        for chi in dec.characters():
            total += dec.terms[chi].to_complex(wp) * _lprime(chi, wp)
    with mpmath.workdps(prec):
        return +total


@serialized
def subject_value(subject: Subject, prec: int = 50) -> mpmath.mpf:
    from .mahler import m_pd, s_d

    wp = _check_prec(prec) + GUARD
    with mpmath.workdps(wp):
        if subject.kind == "sd":
            val = s_d(subject.d, wp) / (2 * mpmath.pi)
        elif subject.kind == "mpd":
            val = m_pd(subject.d, wp)
        else:
            raise ValueError("auxiliary subjects have no independent closed form")
    with mpmath.workdps(prec):
        return +val


@serialized
def verify_decomposition(dec: PrimitiveDecomposition, prec: int = 50) -> mpmath.mpf:
    """|subject value - sum coeff * L'(chi, -1)|, computed independently of the expansion."""
    wp = _check_prec(prec) + GUARD
    with mpmath.workdps(wp):
        res = abs(subject_value(dec.subject, wp) - evaluate_decomposition(dec, wp))
    with mpmath.workdps(prec):
        return +res
