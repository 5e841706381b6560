"""Closed-form Mahler measures of P_d and a numeric Mahler-measure oracle.

Closed form:  2 pi m(P_d) = S_{d+2}/(d+1) - S_{d+1}/(d+2)  with
S_d = 3 sum_{1<=k<=d-1} (d - 2k) D(exp(2 pi i k / d)).

Oracle: for each x = exp(i theta) on an equispaced grid, Jensen's formula in y
gives log|lead(x)| + sum log max(1, |root|); the outer integral is the
trapezoid rule.  Roots crossing the unit circle put kinks in the integrand,
so the trapezoid error is O(h^2) rather than spectral; one Richardson step
against the half grid (the even nodes) removes the leading term.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping

import mpmath
import numpy as np

from .dilog import GUARD, _check_prec, clausen2, zeta3
from .polynomial import BivariatePoly
from .precision import serialized
from .roots import CTYPE, RTYPE, RootFindingError, aberth

RAY_Q7 = "RayQ7"
_P_ID = re.compile(r"^P_?(\d+)$")


def parse_basis_id(name: str) -> int | str:
    """'P5' / 'P_5' -> 5; auxiliary names are returned unchanged."""
    m = _P_ID.match(name.strip())
    if m:
        d = int(m.group(1))
        if d < 1:
            raise ValueError(f"basis element {name!r}: P_d needs d >= 1")
        return d
    return name.strip()


def basis_id(d: int) -> str:
    return f"P{d}"


# -- closed formula ---------------------------------------------------

@serialized
def s_d(d: int, prec: int = 50) -> mpmath.mpf:
    """S_d = 3 sum_{k=1}^{d-1} (d - 2k) Cl2(2 pi k / d)."""
    prec = _check_prec(prec)
    if d < 1:
        raise ValueError("S_d needs d >= 1")
    wp = prec + GUARD
    with mpmath.workdps(wp):
        # the summand is symmetric under k -> d - k, so sum the lower half twice
        total = mpmath.mpf(0)
        for k in range(1, (d + 1) // 2):
            total += (d - 2 * k) * clausen2(k, d, wp)
        val = 6 * total
    with mpmath.workdps(prec):
        return +val


@serialized
def m_pd(d: int, prec: int = 50) -> mpmath.mpf:
    """m(P_d) = (S_{d+2}/(d+1) - S_{d+1}/(d+2)) / (2 pi)."""
    prec = _check_prec(prec)
    if d < 1:
        raise ValueError("P_d needs d >= 1")
    wp = prec + GUARD
    with mpmath.workdps(wp):
        val = (s_d(d + 2, wp) / (d + 1) - s_d(d + 1, wp) / (d + 2)) / (2 * mpmath.pi)
    with mpmath.workdps(prec):
        return +val


@serialized
def m_infinity(prec: int = 50) -> mpmath.mpf:
    """lim m(P_d) = 9 zeta(3) / (2 pi^2)."""
    wp = _check_prec(prec) + GUARD
    with mpmath.workdps(wp):
        val = 9 * zeta3(wp) / (2 * mpmath.pi ** 2)
    with mpmath.workdps(prec):
        return +val


@serialized
def limit_gap(d: int, prec: int = 50) -> mpmath.mpf:
    """|m(P_d) - 9 zeta(3) / (2 pi^2)|."""
    wp = _check_prec(prec) + GUARD
    with mpmath.workdps(wp):
        val = abs(m_pd(d, wp) - m_infinity(wp))
    with mpmath.workdps(prec):
        return +val


# -- combinations -----------------------------------------------------

@dataclass(frozen=True)
class CombinationProduct:
    """prod basis^exponent over P_d (ids 'P<d>') and named auxiliaries."""

    terms: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for name, e in self.terms.items():
            key = parse_basis_id(name)
            key = basis_id(key) if isinstance(key, int) else key
            e = int(e)
            if e:
                clean[key] = clean.get(key, 0) + e
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if v})

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: _basis_sort_key(kv[0]))


def _basis_sort_key(name: str):
    key = parse_basis_id(name)
    return (0, key, "") if isinstance(key, int) else (1, 0, key)


def basis_measure(name: str, prec: int = 50) -> mpmath.mpf:
    """Closed-form Mahler measure of one basis element."""
    key = parse_basis_id(name)
    if isinstance(key, int):
        return m_pd(key, prec)
    from .decomposition import auxiliary_decomposition, evaluate_decomposition

    return evaluate_decomposition(auxiliary_decomposition(key), prec).real


@serialized
def combination_measure(c: CombinationProduct | Mapping[str, int], prec: int = 50) -> mpmath.mpf:
    """m(prod basis^a) = sum a * m(basis)."""
    if not isinstance(c, CombinationProduct):
        c = CombinationProduct(c)
    wp = _check_prec(prec) + GUARD
    with mpmath.workdps(wp):
        total = mpmath.mpf(0)
        for name, e in c.items():
            total += e * basis_measure(name, wp)
    with mpmath.workdps(prec):
        return +total


# -- numeric oracle -----------------------------------------------------

@dataclass(frozen=True)
class MahlerEstimate:
    value: mpmath.mpf
    error: mpmath.mpf  # |T_N - T_{N/2}|
    nodes: int
    jittered: int


def _eval_x_poly(poly: Mapping[int, int], x: np.ndarray) -> np.ndarray:
    out = np.zeros(x.shape, dtype=CTYPE)
    for i, c in poly.items():
        out += c * x**i
    return out


def _jensen_values(cols, theta: np.ndarray, tol: float):
    """Jensen integrand at each theta, plus masks of nodes where p(x, .) vanishes
    identically and where a root sits within ``tol`` of the unit circle.

    Where the leading coefficient in y vanishes the polynomial is truncated to
    its top nonzero coefficient at that x.
    """
    x = np.exp(1j * theta.astype(RTYPE)).astype(CTYPE)
    ycoef = np.stack([_eval_x_poly(col, x) for col in cols], axis=1)  # (B, n+1)
    mags = np.abs(ycoef)
    scale = np.max(mags, axis=1)
    alive = mags > 1e-12 * np.where(scale > 0, scale, 1)[:, None]
    # effective degree: index of the top coefficient that is not negligible
    n1 = ycoef.shape[1]
    eff = np.where(alive.any(axis=1), n1 - 1 - np.argmax(alive[:, ::-1], axis=1), -1)
    dead = (eff < 0) | (scale == 0)
    close = np.zeros(theta.shape, dtype=bool)
    vals = np.zeros(theta.shape, dtype=RTYPE)
    for n in np.unique(eff[~dead]):
        rows = np.nonzero((eff == n) & ~dead)[0]
        lead = ycoef[rows, n]
        vals[rows] = np.log(np.abs(lead))
        if n == 0:
            continue
        try:
            roots = aberth(ycoef[rows, :n + 1])
        except RootFindingError as exc:
            where = rows[exc.rows]
            raise RootFindingError(
                f"root finding failed at theta = {[float(t) for t in theta[where][:5]]}",
                rows=where.tolist(),
            ) from None
        mod = np.abs(roots)
        vals[rows] += np.sum(np.log(np.maximum(mod, 1)), axis=1)
        close[rows[np.any(np.abs(mod - 1) < tol, axis=1)]] = True
    return vals, dead, close


def _trim_degree(poly: BivariatePoly) -> BivariatePoly:
    # integrate over the variable with the larger degree as the root variable
    if poly.degree_y == 0 and poly.degree_x > 0:
        return BivariatePoly({(j, i): c for (i, j), c in poly.coeffs.items()})
    return poly


@serialized
def mahler_numeric(p: BivariatePoly, nodes: int = 4096, prec: int = 30,
                   extrapolate: bool = True) -> MahlerEstimate:
    """Trapezoid-rule estimate of m(p) over `nodes` equispaced theta values.

    With ``extrapolate`` the value is T_N + (T_N - T_{N/2}) / 3.  The reported
    error is |T_N - T_{N/2}| either way, which is conservative for both.
    """
    if p.is_zero():
        raise ValueError("the Mahler measure of the zero polynomial is undefined")
    if nodes < 4 or nodes & (nodes - 1):
        raise ValueError("nodes must be a power of two >= 4")
    p = _trim_degree(p)
    # factor out y^v: it contributes nothing on the torus
    v = min(j for _, j in p.coeffs)
    cols = p.y_coefficients()[v:]
    h = 2 * np.pi / nodes
    theta = np.arange(nodes, dtype=RTYPE) * RTYPE(h)
    vals, bad, close = _jensen_values(cols, theta, 1e-12)
    jittered = 0
    attempt = 0
    while bad.any() or (close.any() and attempt < 2):
        attempt += 1
        if attempt > 8:
            raise RootFindingError(
                f"p(exp(i theta), y) vanishes identically near theta = "
                f"{[float(t) for t in theta[bad][:5]]}",
                rows=np.nonzero(bad)[0].tolist(),
            )
        idx = np.nonzero(bad | close)[0]
        jittered = max(jittered, idx.size)
        # deterministic, irrational-looking shift; stays far inside the cell
        shift = RTYPE(h) * RTYPE(1e-3) * RTYPE(attempt * 0.6180339887498949)
        theta[idx] = np.arange(nodes, dtype=RTYPE)[idx] * RTYPE(h) + shift
        vals[idx], bad[idx], close[idx] = _jensen_values(cols, theta[idx], 1e-12)
    # a root pinned to the circle for a whole arc is harmless: log max(1, 1) = 0
    full = np.sum(vals) / nodes
    half = np.sum(vals[::2]) / (nodes // 2)
    err_raw = abs(full - half)
    if extrapolate:
        full = full + (full - half) / 3
    with mpmath.workdps(prec):
        value = mpmath.mpf(float(full)) + mpmath.mpf(float(full - RTYPE(float(full))))
        err = mpmath.mpf(float(err_raw))
    return MahlerEstimate(value=value, error=err, nodes=nodes, jittered=jittered)
