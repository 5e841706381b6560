"""Integer combinations of P_d (and auxiliaries) isolating a single L'-value.

Each basis element has an exact decomposition over primitive odd characters.
Flattening the cyclotomic coefficients into rational coordinates turns
"the combination has no component outside the target" into a homogeneous
rational linear system; its kernel is computed exactly and a canonical
element with a nonzero target component is selected.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

import mpmath

from .arith import is_fundamental_discriminant
from .characters import DirichletCharacter, parse_label, quadratic_character
from .cyclo import Cyclo
from .decomposition import Subject, auxiliary_decomposition, combine, decompose_mpd
from .dilog import GUARD, _check_prec
from .linalg import nullspace, primitive_integer_vector, rank
from .lvalues import l_prime_minus1
from .mahler import RAY_Q7, basis_id, combination_measure, parse_basis_id
from .precision import serialized


class NoSolutionWithinRange(Exception):
    """No combination of the given basis isolates the target.

    Relative to the canonical decompositions: a different representation of
    the same real numbers could still admit an identity.
    """

    def __init__(self, target: str, basis: Sequence[str], kernel_dim: int, reason: str):
        self.target = target
        self.basis = list(basis)
        self.kernel_dim = kernel_dim
        self.reason = reason
        super().__init__(f"no identity for {target} over {basis[0]}..{basis[-1]}: {reason}")


# -- coefficient matrix ------------------------------------------------------

@dataclass(frozen=True)
class CoefficientMatrix:
    basis: tuple[str, ...]
    columns: tuple[DirichletCharacter, ...]
    entries: tuple[tuple[Fraction, ...], ...]  # one row per basis element

    def block(self, chi: DirichletCharacter) -> slice:
        start = 0
        for c in self.columns:
            if c == chi:
                return slice(start, start + _degree(c))
            start += _degree(c)
        raise KeyError(chi.label)

    def coefficient(self, i: int, chi: DirichletCharacter) -> Cyclo:
        """Reconstruct the Cyclo coefficient of chi in row i."""
        return Cyclo(chi.field_order, self.entries[i][self.block(chi)])


def _degree(chi: DirichletCharacter) -> int:
    return Cyclo.rational(0, chi.field_order).degree


def _basis_decomposition(name: str):
    key = parse_basis_id(name)
    return decompose_mpd(key) if isinstance(key, int) else auxiliary_decomposition(key)


def default_basis(d_max: int, include_ray_q7: bool = False, extra: Sequence[str] = ()) -> list[str]:
    if d_max < 1:
        raise ValueError("d_max must be >= 1")
    names = [basis_id(d) for d in range(1, d_max + 1)]
    if include_ray_q7:
        names.append(RAY_Q7)
    names.extend(extra)
    return names


def coefficient_matrix(d_max: int, include_ray_q7: bool = False,
                       basis: Sequence[str] | None = None) -> CoefficientMatrix:
    names = list(basis) if basis is not None else default_basis(d_max, include_ray_q7)
    decs = [_basis_decomposition(n) for n in names]
    cols = sorted({chi for dec in decs for chi in dec.terms})
    rows = []
    for dec in decs:
        row: list[Fraction] = []
        for chi in cols:
            row.extend(dec[chi].lift(chi.field_order).coords if chi in dec.terms
                       else Cyclo.rational(0, chi.field_order).coords)
        rows.append(tuple(row))
    return CoefficientMatrix(tuple(names), tuple(cols), tuple(rows))


# -- certificates -------------------------------------------------------------

@dataclass(frozen=True)
class Target:
    """Quadratic chi_{-f} (kind 'quadratic') or a complex pair (kind 'complex_pair')."""

    kind: str
    character: DirichletCharacter

    @property
    def conductor(self) -> int:
        return self.character.modulus

    def describe(self) -> str:
        if self.kind == "quadratic":
            return f"L'(chi_-{self.conductor}, -1)"
        return f"2 Re L'({self.character.label}, -1)"

    @serialized
    def value(self, prec: int = 50) -> mpmath.mpf:
        """The real number the multiple q is applied to."""
        wp = prec + GUARD
        with mpmath.workdps(wp):
            v = l_prime_minus1(self.character, wp)
            v = v.real if self.kind == "quadratic" else 2 * v.real
        with mpmath.workdps(prec):
            return +v

    def pattern(self, q: Fraction) -> dict[DirichletCharacter, Cyclo]:
        chi = self.character
        c = Cyclo.rational(q, chi.field_order)
        if self.kind == "quadratic":
            return {chi: c}
        return {chi: c, chi.conjugate: c}

    def to_dict(self) -> dict:
        if self.kind == "quadratic":
            return {"kind": "quadratic", "conductor": self.conductor, "character": self.character.label}
        return {"kind": "complex_pair", "character": self.character.label}

    @classmethod
    def from_dict(cls, data: Mapping) -> "Target":
        if data["kind"] == "quadratic":
            return quadratic_target(int(data["conductor"]))
        if data["kind"] == "complex_pair":
            return complex_target(parse_label(data["character"]))
        raise ValueError(f"unknown target kind {data['kind']!r}")


def quadratic_target(f: int) -> Target:
    if f < 3 or not is_fundamental_discriminant(-f):
        raise ValueError(f"-{f} is not a fundamental discriminant")
    return Target("quadratic", quadratic_character(-f))


def complex_target(chi: DirichletCharacter) -> Target:
    if not (chi.is_odd and chi.is_primitive):
        raise ValueError(f"{chi.label} is not a primitive odd character")
    if chi.is_real:
        raise ValueError(f"{chi.label} is real; use the quadratic solver")
    # store the smaller Conrey index of the pair
    return Target("complex_pair", min(chi, chi.conjugate))


@dataclass(frozen=True)
class IdentityCertificate:
    """m(prod basis^a) = multiple * target value."""

    target: Target
    exponents: Mapping[str, int]
    multiple: Fraction
    residual: mpmath.mpf | None = None
    exact: bool | None = None

    @property
    def r(self) -> Fraction:
        return 1 / self.multiple

    def items(self) -> list[tuple[str, int]]:
        from .mahler import CombinationProduct

        return CombinationProduct(self.exponents).items()

    def to_dict(self) -> dict:
        return {
            "target": self.target.to_dict(),
            "exponents": [[name, e] for name, e in self.items()],
            "multiple": f"{self.multiple.numerator}/{self.multiple.denominator}",
            "residual": None if self.residual is None else mpmath.nstr(self.residual, 6),
            "exact": self.exact,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "IdentityCertificate":
        res = data.get("residual")
        return cls(
            target=Target.from_dict(data["target"]),
            exponents={str(name): int(e) for name, e in data["exponents"]},
            multiple=Fraction(data["multiple"]),
            residual=None if res is None else mpmath.mpf(res),
            exact=data.get("exact"),
        )

    def describe(self) -> str:
        num = " * ".join(f"{n}^{e}" for n, e in self.items())
        return f"m({num}) = {self.multiple} * {self.target.describe()}"


def exact_check(cert: IdentityCertificate) -> bool:
    """The exact decomposition of the combination equals multiple * target."""
    if not cert.exponents or cert.multiple == 0:
        return False
    dec = combine(dict(cert.exponents), Subject("aux", name="combination"))
    want = cert.target.pattern(cert.multiple)
    if set(dec.terms) != set(want):
        return False
    return all(dec.terms[chi] == c for chi, c in want.items())


@serialized
def verify_certificate(cert: IdentityCertificate, prec: int = 50) -> IdentityCertificate:
    """Return ``cert`` with residual |m(combination) - multiple * target| and the exact flag."""
    wp = _check_prec(prec) + GUARD
    with mpmath.workdps(wp):
        lhs = combination_measure(cert.exponents, wp)
        rhs = cert.target.value(wp) * mpmath.mpf(cert.multiple.numerator) / cert.multiple.denominator
        res = abs(lhs - rhs)
    with mpmath.workdps(prec):
        res = +res
    return replace(cert, residual=res, exact=exact_check(cert))


# -- solving ------------------------------------------------------------------

def _constraints(mat: CoefficientMatrix, target: Target):
    """Rows (over basis variables) that must vanish, and the target functional."""
    keep = {target.character, target.character.conjugate}
    n = len(mat.basis)
    rows = []
    t = None
    start = 0
    for chi in mat.columns:
        width = _degree(chi)
        for j in range(width):
            col = [mat.entries[i][start + j] for i in range(n)]
            if chi not in keep:
                rows.append(col)
            elif chi == target.character:
                if j == 0:
                    t = col
                else:
                    # complex pair: the coefficient at chi must be rational
                    rows.append(col)
        start += width
    if t is None:
        t = [Fraction(0)] * n
    return rows, t


def _dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _circuits(kernel: list[list[Fraction]], n: int):
    """Minimal-support vectors of span(kernel), one per support."""
    k = len(kernel)
    if k == 1:
        yield kernel[0]
        return
    seen = set()
    for zeros in combinations(range(n), k - 1):
        sub = [[kernel[r][z] for r in range(k)] for z in zeros]  # (k-1) x k
        lam = nullspace(sub, k)
        if len(lam) != 1:
            continue
        v = [_dot(lam[0], [kernel[r][i] for r in range(k)]) for i in range(n)]
        supp = frozenset(i for i, x in enumerate(v) if x)
        if supp and supp not in seen:
            seen.add(supp)
            yield v


def _select(kernel: list[list[Fraction]], t: list[Fraction], n: int) -> list[int]:
    best = None
    best_key = None
    for v in _circuits(kernel, n):
        tv = _dot(t, v)
        if tv == 0:
            continue
        ints = primitive_integer_vector(v)
        if _dot(t, ints) < 0:
            ints = [-a for a in ints]
        support = tuple(i for i, a in enumerate(ints) if a)
        # among equal-size supports prefer the lowest-degree basis elements
        key = (len(support), support, max(abs(a) for a in ints), ints)
        if best_key is None or key < best_key:
            best, best_key = ints, key
    assert best is not None
    return best


def _solve(target: Target, mat: CoefficientMatrix) -> IdentityCertificate:
    n = len(mat.basis)
    rows, t = _constraints(mat, target)
    kernel = nullspace(rows, n) if rows else nullspace([], n)
    label = target.describe()
    if not kernel:
        raise NoSolutionWithinRange(label, mat.basis, 0, "the elimination constraints have full rank")
    # t vanishes on the kernel iff appending it does not raise the rank of the kernel pairing
    if all(_dot(t, v) == 0 for v in kernel):
        raise NoSolutionWithinRange(
            label, mat.basis, len(kernel),
            f"target coefficient vanishes on the whole {len(kernel)}-dimensional kernel",
        )
    a = _select(kernel, t, n)
    q = _dot(t, a)
    exps = {name: e for name, e in zip(mat.basis, a) if e}
    return IdentityCertificate(target=target, exponents=exps, multiple=q, exact=None)


def solve_target(target: Target, d_max: int, include_ray_q7: bool = False,
                 basis: Sequence[str] | None = None) -> IdentityCertificate:
    mat = coefficient_matrix(d_max, include_ray_q7, basis)
    cert = _solve(target, mat)
    return replace(cert, exact=exact_check(cert))


def solve_conductor(f: int, d_max: int, include_ray_q7: bool = False) -> IdentityCertificate:
    """m(prod basis^a) = q L'(chi_{-f}, -1); raises NoSolutionWithinRange."""
    return solve_target(quadratic_target(f), d_max, include_ray_q7)


def solve_complex_pair(chi: DirichletCharacter, d_max: int, include_ray_q7: bool = False) -> IdentityCertificate:
    """m(prod basis^a) = q * 2 Re L'(chi, -1); raises NoSolutionWithinRange."""
    return solve_target(complex_target(chi), d_max, include_ray_q7)


def kernel_certified_empty(target: Target, d_max: int, include_ray_q7: bool = False) -> bool:
    """Rank certificate: True iff adding the target functional to the
    constraints does not change the rank, i.e. t is in their row span."""
    mat = coefficient_matrix(d_max, include_ray_q7)
    rows, t = _constraints(mat, target)
    return rank(rows + [t]) == rank(rows) if rows else not any(t)


# -- published identities ----------------------------------------------------

_KNOWN = [
    ("quadratic", 3, {"P1": 1}, 1),
    ("quadratic", 4, {"P1": 1, "P2": 2}, 2),
    ("quadratic", 8, {"P1": 33, "P2": -30, "P5": 21, "P6": 28}, 12),
    ("quadratic", 15, {"P13": 210, "P12": 182, "P11": 156, "P8": 135, "P7": 108, "P6": 84,
                       "P5": 63, "P4": 900, "P2": 252, "P1": -2394}, 45),
    ("quadratic", 20, {"P18": 190, "P17": 171, "P16": 153, "P15": 136, "P14": 120, "P13": 105,
                       "P12": 91, "P11": 78, "P1": 168, "P8": -225, "P7": -180, "P6": -140,
                       "P5": -105, "P2": -24, "P4": -60}, 30),
    ("quadratic", 24, {"P22": 276, "P21": 253, "P20": 231, "P19": 210, "P18": 190, "P17": 171,
                       "P16": 153, "P15": 136, "P14": 120, "P13": 105, "P12": 91, "P11": 78,
                       "P6": -252, "P5": -189, "P2": -234, "P1": -1269}, 36),
    # complex pairs: the published "c Re L'" equals (c/2) * 2 Re L'
    ("complex_pair", "5.2", {"P1": 720, "P8": -45, "P7": -36, "P6": -28, "P5": -21, "P4": -240}, 30),
    ("complex_pair", "7.3", {"P1": 3432, "P5": 2520, "P12": -728, "P11": -624, "P2": -1008,
                             "RayQ7": -539}, 112),
    ("complex_pair", "9.2", {"P7": 360, "P6": 280, "P5": 210, "P1": 369, "P16": -153, "P15": -136,
                             "P14": -120, "P13": -105, "P12": -91, "P11": -78, "P2": -126}, 36),
]


def known_solutions() -> list[IdentityCertificate]:
    out = []
    for kind, tgt, exps, q in _KNOWN:
        target = quadratic_target(tgt) if kind == "quadratic" else complex_target(parse_label(tgt))
        out.append(IdentityCertificate(target=target, exponents=dict(exps), multiple=Fraction(q)))
    return out


def max_basis_degree(cert: IdentityCertificate) -> int:
    return max((k for k in map(parse_basis_id, cert.exponents) if isinstance(k, int)), default=0)


def uses_ray(cert: IdentityCertificate) -> bool:
    return RAY_Q7 in cert.exponents


def same_line(a: Mapping[str, int], b: Mapping[str, int]) -> bool:
    """Equal up to a positive rational scalar."""
    keys = set(a) | set(b)
    if {k for k in keys if a.get(k)} != {k for k in keys if b.get(k)}:
        return False
    k0 = next(iter(sorted(k for k in keys if a.get(k))), None)
    if k0 is None:
        return True
    ratio = Fraction(a[k0], b[k0])
    return ratio > 0 and all(Fraction(a.get(k, 0)) == ratio * b.get(k, 0) for k in keys)
