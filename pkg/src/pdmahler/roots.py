"""Aberth-Ehrlich simultaneous root finding, vectorised over a batch of polynomials.

Arithmetic is done in numpy's extended precision (``clongdouble``), which is
ample for the quadrature oracle that consumes the roots.
"""

from __future__ import annotations

import numpy as np

CTYPE = np.clongdouble
RTYPE = np.longdouble
EPS = float(np.finfo(RTYPE).eps)


class RootFindingError(ArithmeticError):
    def __init__(self, message: str, rows=()):
        super().__init__(message)
        self.rows = list(rows)


def _horner(coeffs: np.ndarray, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # coeffs (B, n+1) lowest degree first; z (B, n)
    p = np.broadcast_to(coeffs[:, -1:], z.shape).astype(CTYPE)
    dp = np.zeros_like(p)
    for k in range(coeffs.shape[1] - 2, -1, -1):
        dp = dp * z + p
        p = p * z + coeffs[:, k:k + 1]
    return p, dp


def aberth(coeffs, max_iter: int = 200, tol: float | None = None) -> np.ndarray:
    """Roots of each row of ``coeffs`` (lowest degree first, nonzero leading entry).

    Returns an array of shape (B, n).  Raises RootFindingError listing the rows
    that have not converged after ``max_iter`` sweeps.
    """
    c = np.atleast_2d(np.asarray(coeffs, dtype=CTYPE))
    B, n1 = c.shape
    n = n1 - 1
    if n < 1:
        return np.zeros((B, 0), dtype=CTYPE)
    lead = c[:, -1]
    if np.any(lead == 0):
        raise ValueError("leading coefficients must be nonzero")
    c = c / lead[:, None]
    if n == 1:
        return -c[:, :1]
    if tol is None:
        tol = 64 * EPS

    # starting circle: geometric mean of root moduli, floored away from 0
    c0 = np.abs(c[:, 0]).astype(RTYPE)
    radius = np.where(c0 > 0, c0 ** (RTYPE(1) / n), RTYPE(1))
    radius = np.clip(radius, RTYPE(1e-3), None)
    angles = (2 * np.pi * np.arange(n) / n + 0.4).astype(RTYPE)
    z = radius[:, None] * np.exp(1j * angles)[None, :].astype(CTYPE)

    active = np.ones(B, dtype=bool)
    for _ in range(max_iter):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        za = z[idx]
        p, dp = _horner(c[idx], za)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(p == 0, 0, p / dp)
            diff = za[:, :, None] - za[:, None, :]
            diag = np.eye(n, dtype=bool)[None, :, :]
            inv = np.where(diag, 0, 1 / np.where(diag, 1, diff))
            s = inv.sum(axis=2)
            step = ratio / (1 - ratio * s)
        step = np.where(np.isfinite(step), step, 0)
        z[idx] = za - step
        small = np.abs(step) <= tol * (1 + np.abs(z[idx]))
        # clustered roots stall at ~sqrt(eps) steps; accept a residual at rounding level
        p_new, _ = _horner(c[idx], z[idx])
        bound, _ = _horner(np.abs(c[idx]).astype(CTYPE), np.abs(z[idx]).astype(CTYPE))
        settled = np.abs(p_new) <= 32 * EPS * np.abs(bound)
        done = (small | settled).all(axis=1)
        active[idx[done]] = False
    if active.any():
        raise RootFindingError(
            f"Aberth iteration did not converge for {int(active.sum())} polynomial(s)",
            rows=np.nonzero(active)[0].tolist(),
        )
    return z
