"""Exact rational linear algebra via fraction-free (Bareiss) elimination.

Matrices are lists of rows.  Rows with rational entries are scaled to
integers first (row scaling does not change the row space or the kernel);
the elimination itself then stays in Z with exact divisions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence


def _as_integer_row(row: Sequence) -> list[int]:
    fr = [Fraction(x) for x in row]
    den = lcm(*(x.denominator for x in fr)) if fr else 1
    return [int(x * den) for x in fr]


@dataclass
class Echelon:
    rows: list[list[int]]  # integer rows, the first `rank` rows carry pivots
    pivots: list[int]  # pivot column of each of the first `rank` rows

    @property
    def rank(self) -> int:
        return len(self.pivots)


def bareiss(matrix: Sequence[Sequence]) -> Echelon:
    """Row echelon form by Bareiss elimination with column skipping."""
    m = [_as_integer_row(r) for r in matrix]
    if not m:
        return Echelon([], [])
    n_rows, n_cols = len(m), len(m[0])
    prev = 1
    r = 0
    pivots = []
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, n_rows):
            mi = m[i]
            f = mi[c]
            row_r = m[r]
            for j in range(c + 1, n_cols):
                mi[j] = (mi[j] * p - f * row_r[j]) // prev
            mi[c] = 0
        # entries of later rows in skipped columns are already zero
        prev = p
        pivots.append(c)
        r += 1
    return Echelon(m, pivots)


def rank(matrix: Sequence[Sequence]) -> int:
    return bareiss(matrix).rank


def _back_substitute(ech: Echelon, n_cols: int, rhs: list[Fraction] | None,
                     free_values: dict[int, Fraction]) -> list[Fraction]:
    x = [Fraction(0)] * n_cols
    for c, v in free_values.items():
        x[c] = v
    for r in range(ech.rank - 1, -1, -1):
        c = ech.pivots[r]
        row = ech.rows[r]
        s = rhs[r] if rhs is not None else Fraction(0)
        for j in range(c + 1, n_cols):
            if row[j]:
                s -= row[j] * x[j]
        x[c] = s / row[c]
    return x


def nullspace(matrix: Sequence[Sequence], n_cols: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : M v = 0}, one vector per free column (free entry = 1)."""
    if not matrix:
        if n_cols is None:
            raise ValueError("n_cols is required for an empty matrix")
        return [[Fraction(int(i == j)) for j in range(n_cols)] for i in range(n_cols)]
    n_cols = len(matrix[0])
    ech = bareiss(matrix)
    free = [c for c in range(n_cols) if c not in set(ech.pivots)]
    basis = []
    for f in free:
        vals = {c: Fraction(int(c == f)) for c in free}
        basis.append(_back_substitute(ech, n_cols, None, vals))
    return basis


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """One solution of M x = b (free variables set to 0), or None if inconsistent."""
    if not matrix:
        return None
    n_cols = len(matrix[0])
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    ech = bareiss(aug)
    if ech.pivots and ech.pivots[-1] == n_cols:
        return None
    rhs_col = [Fraction(ech.rows[r][n_cols]) for r in range(ech.rank)]
    free = {c: Fraction(0) for c in range(n_cols) if c not in set(ech.pivots)}
    return _back_substitute(ech, n_cols, rhs_col, free)


def solve_left(rows: Sequence[Sequence], target: Sequence) -> list[Fraction] | None:
    """Find y with sum_i y_i * rows[i] == target."""
    transposed = [list(col) for col in zip(*rows)]
    return solve(transposed, target)


def primitive_integer_vector(v: Sequence[Fraction]) -> list[int]:
    """Scale a rational vector to coprime integers, keeping its direction."""
    den = lcm(*(Fraction(x).denominator for x in v))
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g == 0:
        return ints
    return [a // g for a in ints]
