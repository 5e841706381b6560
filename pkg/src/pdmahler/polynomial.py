"""Sparse bivariate integer polynomials and their plain-text monomial format.

Grammar (whitespace ignored)::

    poly    := term (("+" | "-") term)*
    term    := [sign] (int ["*" mono] | mono)
    mono    := var ["^" int] ["*" var ["^" int]]
    var     := "x" | "y"

A term is a signed integer coefficient times optional ``x^i`` and ``y^j``
factors, e.g. ``1 + x + y``, ``-3*x^2*y``, ``7*y^2 - x``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping

Monomial = tuple[int, int]

_TERM = re.compile(
    r"""^(?P<coef>\d+)?
        (?:\*?(?P<f1>[xy])(?:\^(?P<e1>\d+))?)?
        (?:\*(?P<f2>[xy])(?:\^(?P<e2>\d+))?)?$""",
    re.VERBOSE,
)


class PolynomialParseError(ValueError):
    pass


@dataclass(frozen=True)
class BivariatePoly:
    """Sum of coeffs[(i, j)] * x^i * y^j with no stored zeros."""

    coeffs: Mapping[Monomial, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {(int(i), int(j)): int(c) for (i, j), c in self.coeffs.items() if c}
        if any(i < 0 or j < 0 for i, j in clean):
            raise ValueError("negative exponents are not supported")
        object.__setattr__(self, "coeffs", clean)

    def __iter__(self) -> Iterator[tuple[Monomial, int]]:
        return iter(sorted(self.coeffs.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0][1], kv[0][0])))

    def __len__(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree_x(self) -> int:
        return max((i for i, _ in self.coeffs), default=0)

    @property
    def degree_y(self) -> int:
        return max((j for _, j in self.coeffs), default=0)

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.coeffs), default=0)

    def __add__(self, other: "BivariatePoly") -> "BivariatePoly":
        out = dict(self.coeffs)
        for mono, c in other.coeffs.items():
            out[mono] = out.get(mono, 0) + c
        return BivariatePoly(out)

    def __mul__(self, other: "BivariatePoly") -> "BivariatePoly":
        out: dict[Monomial, int] = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return BivariatePoly(out)

    def __call__(self, x, y):
        return sum(c * x**i * y**j for (i, j), c in self.coeffs.items())

    def y_coefficients(self) -> list[dict[int, int]]:
        """Coefficients of y^0 .. y^degree_y, each a sparse polynomial in x."""
        cols: list[dict[int, int]] = [dict() for _ in range(self.degree_y + 1)]
        for (i, j), c in self.coeffs.items():
            cols[j][i] = c
        return cols

    # -- text format ----------------------------------------------------
    @classmethod
    def parse(cls, text: str) -> "BivariatePoly":
        s = re.sub(r"\s+", "", text)
        if not s:
            raise PolynomialParseError("empty polynomial")
        pieces = re.findall(r"[+-]*[^+-]+", s)
        if "".join(pieces) != s:
            raise PolynomialParseError(f"cannot parse polynomial {text!r}")
        coeffs: dict[Monomial, int] = {}
        for piece in pieces:
            body = piece.lstrip("+-")
            prefix = piece[: len(piece) - len(body)]
            if len(prefix) > 2 or prefix in ("++", "--", "-+"):
                raise PolynomialParseError(f"bad sign {prefix!r} in {text!r}")
            sign = -1 if "-" in prefix else 1
            m = _TERM.match(body)
            if not body or m is None or (m["coef"] is None and m["f1"] is None):
                raise PolynomialParseError(f"bad term {piece!r} in {text!r}")
            if m["coef"] is not None and m["f1"] is not None and body[len(m["coef"])] != "*":
                raise PolynomialParseError(f"missing '*' in term {piece!r}")
            if m["coef"] is None and body.startswith("*"):
                raise PolynomialParseError(f"dangling '*' in term {piece!r}")
            coef = int(m["coef"]) if m["coef"] is not None else 1
            if m["f1"] is not None and m["f1"] == m["f2"]:
                raise PolynomialParseError(f"repeated variable in {piece!r}")
            exps = {"x": 0, "y": 0}
            for var, e in ((m["f1"], m["e1"]), (m["f2"], m["e2"])):
                if var is not None:
                    exps[var] = int(e) if e is not None else 1
            key = (exps["x"], exps["y"])
            coeffs[key] = coeffs.get(key, 0) + sign * coef
        return cls(coeffs)

    def format(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j), c in self:
            factors = []
            if i:
                factors.append("x" if i == 1 else f"x^{i}")
            if j:
                factors.append("y" if j == 1 else f"y^{j}")
            mag = abs(c)
            if factors and mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.format()


def pd_poly(d: int) -> BivariatePoly:
    """P_d(x, y) = sum_{0 <= i + j <= d} x^i y^j."""
    if d < 1:
        raise ValueError("P_d needs d >= 1")
    return BivariatePoly({(i, j): 1 for i in range(d + 1) for j in range(d + 1 - i)})


def ray_q7() -> BivariatePoly:
    """Ray's conductor-7 polynomial (x^7-1)/(x-1) (y-1)^2 + 7 x^2 (x+1)^2 y."""
    cyclo7 = BivariatePoly({(i, 0): 1 for i in range(7)})
    ym1_sq = BivariatePoly({(0, 2): 1, (0, 1): -2, (0, 0): 1})
    rest = BivariatePoly({(4, 1): 7, (3, 1): 14, (2, 1): 7})
    return cyclo7 * ym1_sq + rest
