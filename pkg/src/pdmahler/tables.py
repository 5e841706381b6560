"""Regenerate the published tables and diff them against the golden data."""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath

from . import golden
from .characters import parse_label
from .decomposition import (PrimitiveDecomposition, decompose_mpd, decompose_sd,
                            evaluate_decomposition, subject_value, verify_decomposition)
from .precision import serialized
from .solver import known_solutions, verify_certificate

TABLE1_RANGE = range(1, 17)
TABLE5_DEGREES = (*range(3, 19), 20, 24)
EXACT, NUMERIC, MISMATCH = "exact", "numeric", "mismatch"


@dataclass
class Row:
    key: str
    status: str
    residual: mpmath.mpf
    payload: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status in (EXACT, NUMERIC)


def _tolerance(prec: int) -> mpmath.mpf:
    return mpmath.mpf(10) ** (-prec + 10)


@serialized
def _compare(dec: PrimitiveDecomposition, published, prec: int) -> tuple[str, mpmath.mpf, list[str]]:
    """Exact comparison; falls back to equality of the two real numbers."""
    keys = set(dec.terms) | set(published)
    differing = sorted(chi.label for chi in keys
                       if not (chi in dec.terms and chi in published and dec.terms[chi] == published[chi]))
    residual = verify_decomposition(dec, prec)
    if not differing:
        return EXACT, residual, []
    pub = PrimitiveDecomposition(dec.subject, published)
    with mpmath.workdps(prec + 10):
        gap = abs(subject_value(dec.subject, prec + 10) - evaluate_decomposition(pub, prec + 10))
    status = NUMERIC if gap < _tolerance(prec) else MISMATCH
    return status, max(residual, gap), differing


def _decomposition_rows(kind: str, degrees, published, prec: int) -> list[Row]:
    rows = []
    for d in degrees:
        dec = decompose_mpd(d) if kind == "mpd" else decompose_sd(d)
        status, residual, differing = _compare(dec, published[d], prec)
        if residual >= _tolerance(prec):
            status = MISMATCH
        payload = dec.to_dict()
        if differing:
            payload["differs_from_published"] = differing
        rows.append(Row(dec.subject.describe(), status, residual, payload))
    return rows


def table1(prec: int = 50) -> list[Row]:
    return _decomposition_rows("mpd", TABLE1_RANGE, golden.table1(), prec)


def table5(prec: int = 50) -> list[Row]:
    return _decomposition_rows("sd", TABLE5_DEGREES, golden.table5(), prec)


@serialized
def table6(prec: int = 50) -> list[Row]:
    """Each constant C_{k,n} equals the coefficient of chi_k(n,.) in S_k / (2 pi)."""
    rows = []
    for name, (label, const) in golden.CONSTANTS.items():
        chi = parse_label(label)
        have = decompose_sd(chi.modulus)[chi]
        ok = have == const
        with mpmath.workdps(prec + 10):
            gap = abs(have.to_complex(prec + 10) - const.to_complex(prec + 10))
        payload = {"constant": name, "character_label": label,
                   "coefficient": have.to_dict(), "value": have.to_complex(prec)}
        if label != golden.PRINTED_LABELS.get(name, label):
            payload["printed_label"] = golden.PRINTED_LABELS[name]
        rows.append(Row(name, EXACT if ok else MISMATCH, gap, payload))
    return rows


def _certificate_rows(kind: str, prec: int) -> list[Row]:
    rows = []
    for cert in known_solutions():
        if cert.target.kind != kind:
            continue
        checked = verify_certificate(cert, prec)
        good = checked.exact and checked.residual < _tolerance(prec)
        key = (f"f={cert.target.conductor}" if kind == "quadratic"
               else f"chi={cert.target.character.label}")
        rows.append(Row(key, EXACT if good else MISMATCH, checked.residual, checked.to_dict()))
    return rows


def table3(prec: int = 50) -> list[Row]:
    return _certificate_rows("quadratic", prec)


def table4(prec: int = 50) -> list[Row]:
    return _certificate_rows("complex_pair", prec)


TABLES = {1: table1, 3: table3, 4: table4, 5: table5, 6: table6}
