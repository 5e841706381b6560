"""Command-line front end: ``pdmahler <command> ...``.

Exit codes: 0 success, 2 verification failure, 3 parse or configuration
error, 4 numeric non-convergence.  The default precision comes from
``PDMAHLER_PREC`` (decimal digits, default 50).

Polynomials for ``oracle`` use the grammar documented in
:mod:`pdmahler.polynomial`, e.g. ``"1 + x + y"`` or ``"-3*x^2*y + 7"``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import mpmath

from .characters import gamma_coeff, parse_label
from .cyclo import Cyclo
from .decomposition import PrimitiveDecomposition, decompose_mpd, decompose_sd, verify_decomposition
from .dilog import BranchCutError, bloch_wigner, clausen2, li2
from .lvalues import d_chi, d_f, l2, l_prime_via_functional_eq, reduce_imprimitive
from .mahler import m_pd, mahler_numeric, s_d
from .polynomial import BivariatePoly, PolynomialParseError
from .roots import RootFindingError
from .solver import IdentityCertificate, NoSolutionWithinRange, solve_complex_pair, solve_conductor, verify_certificate
from . import golden, tables

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3, 4
ENV_PREC = "PDMAHLER_PREC"
FORMATS = ("json", "csv", "text")


class ConfigError(ValueError):
    pass


class VerificationFailed(Exception):
    def __init__(self, output: "Output"):
        super().__init__("verification failed")
        self.output = output


@dataclass(frozen=True)
class RunConfig:
    precision: int = 50
    nodes: int = 4096
    output_format: str = "text"

    def __post_init__(self):
        if self.precision < 15:
            raise ConfigError(f"precision must be >= 15, got {self.precision}")
        if self.nodes < 64 or self.nodes & (self.nodes - 1):
            raise ConfigError(f"nodes must be a power of 2 >= 64, got {self.nodes}")
        if self.output_format not in FORMATS:
            raise ConfigError(f"unknown output format {self.output_format!r}")


@dataclass
class Output:
    """A result: JSON payload plus a flat table for csv/text rendering."""

    payload: Any
    columns: list[str] = field(default_factory=list)
    rows: list[dict] = field(default_factory=list)
    text: list[str] | None = None  # preformatted lines for the text format


# -- formatting ----------------------------------------------------------------

def fmt_real(x, digits: int) -> str:
    with mpmath.workdps(digits + 5):
        return mpmath.nstr(mpmath.mpmathify(x), digits, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)


def fmt_small(x) -> str:
    """Residuals and error estimates: three significant digits, scientific."""
    return mpmath.nstr(mpmath.mpmathify(x), 3)


def fmt_number(x, digits: int) -> str:
    with mpmath.workdps(digits + 5):
        x = mpmath.mpmathify(x)
        if isinstance(x, mpmath.mpc):
            # imaginary noise far below the printed precision is dropped
            if abs(x.imag) <= mpmath.mpf(10) ** (-digits) * max(1, abs(x)):
                return fmt_real(x.real, digits)
            sign = "-" if x.imag < 0 else "+"
            return f"{fmt_real(x.real, digits)} {sign} {fmt_real(abs(x.imag), digits)}i"
        return fmt_real(x, digits)


def fmt_cyclo(c: Cyclo) -> str:
    return str(c)


def _jsonable(obj, digits: int):
    if isinstance(obj, dict):
        return {k: _jsonable(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v, digits) for v in obj]
    if isinstance(obj, (mpmath.mpf, mpmath.mpc)):
        return fmt_number(obj, digits)
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, Cyclo):
        return obj.to_dict()
    return obj


def render(out: Output, cfg: RunConfig) -> str:
    digits = cfg.precision
    if cfg.output_format == "json":
        return json.dumps(_jsonable(out.payload, digits), indent=2) + "\n"
    rows = [{k: _cell(r.get(k, ""), digits) for k in out.columns} for r in out.rows]
    if cfg.output_format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=out.columns, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    if out.text is not None:
        return "\n".join(out.text) + "\n"
    lines = []
    for r in rows:
        if len(out.columns) == 2 and out.columns[0] == "field":
            lines.append(f"{r['field']}: {r['value']}")
        else:
            lines.append("  ".join(f"{k}={r[k]}" for k in out.columns if r[k] != ""))
    return "\n".join(lines) + "\n"


def _cell(v, digits: int) -> str:
    if isinstance(v, (mpmath.mpf, mpmath.mpc)):
        return fmt_number(v, digits)
    if isinstance(v, Cyclo):
        return fmt_cyclo(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return str(v)
    return "" if v is None else str(v)


def _fields(pairs: list[tuple[str, Any]], payload=None) -> Output:
    return Output(payload if payload is not None else dict(pairs), ["field", "value"],
                  [{"field": k, "value": v} for k, v in pairs])


# -- argument parsing -----------------------------------------------------------

_COMPLEX_I = re.compile(r"(?<![\w.])([ij])")


def parse_complex(text: str) -> mpmath.mpc:
    """Accept '0.5', '1+2i', 'i', '-0.3-0.1j', 'exp(i*pi/3)' is not supported."""
    s = text.strip().replace(" ", "")
    s = _COMPLEX_I.sub("1j", s).replace("i", "j")
    try:
        return mpmath.mpc(complex(s)) if "j" in s else mpmath.mpc(mpmath.mpf(s))
    except (ValueError, TypeError):
        raise ConfigError(f"cannot parse complex number {text!r}") from None


def _label(text: str):
    try:
        return parse_label(text)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


# -- commands -------------------------------------------------------------------

def cmd_dilog(args, cfg: RunConfig) -> Output:
    p = cfg.precision
    if args.clausen:
        j, k = args.clausen
        if k < 1:
            raise ConfigError("clausen needs k >= 1")
        return _fields([("clausen2", clausen2(j, k, p)), ("j", j), ("k", k)])
    if args.bw is not None:
        z = parse_complex(args.bw)
        return _fields([("bloch_wigner", bloch_wigner(z, p)), ("z", z)])
    z = parse_complex(args.li2)
    return _fields([("li2", li2(z, p)), ("z", z)])


def cmd_char(args, cfg: RunConfig) -> Output:
    chi = _label(args.label)
    pairs = [
        ("label", chi.label),
        ("modulus", chi.modulus),
        ("conductor", chi.conductor),
        ("primitive", chi.is_primitive),
        ("induced_by", chi.primitive.label),
        ("parity", "odd" if chi.is_odd else "even"),
        ("order", chi.order),
        ("real", chi.is_real),
        ("conjugate", chi.conjugate.label),
    ]
    if chi.modulus > 1:
        pairs.append(("gamma", gamma_coeff(chi)))
    return _fields(pairs)


def cmd_lvalue(args, cfg: RunConfig) -> Output:
    chi = _label(args.label)
    if not chi.is_odd:
        raise ConfigError(f"{chi.label} is even; L'(chi, -1) values here are for odd characters")
    p = cfg.precision
    pairs = [("label", chi.label), ("d_chi", d_chi(chi, p))]
    if chi.is_primitive:
        pairs += [("l_prime_minus1", d_chi(chi, p)),
                  ("l_prime_minus1_functional_eq", l_prime_via_functional_eq(chi, p)),
                  ("l2_conj", l2(chi.conjugate, p))]
    else:
        red = reduce_imprimitive(chi, p)
        pairs += [("primitive", red.chi_star.label), ("gamma", red.gamma), ("beta", red.beta),
                  ("l2_conj", l2(chi.conjugate, p))]
    return _fields(pairs)


def _decomposition_output(dec: PrimitiveDecomposition, value, cfg: RunConfig) -> Output:
    residual = verify_decomposition(dec, cfg.precision)
    payload = dec.to_dict()
    payload["value"] = value
    payload["residual"] = fmt_small(residual)
    rows = [{"character_label": chi.label, "coefficient": dec.terms[chi]} for chi in dec.characters()]
    text = [f"{dec.subject.describe()} = {fmt_real(value, cfg.precision)}"]
    text += [f"  {r['character_label']}: {fmt_cyclo(r['coefficient'])}" for r in rows]
    text.append(f"residual: {fmt_small(residual)}")
    return Output(payload, ["character_label", "coefficient"], rows, text)


def cmd_spd(args, cfg: RunConfig) -> Output:
    _positive(args.d)
    with mpmath.workdps(cfg.precision + 10):
        value = s_d(args.d, cfg.precision + 10) / (2 * mpmath.pi)
    return _decomposition_output(decompose_sd(args.d), value, cfg)


def cmd_mpd(args, cfg: RunConfig) -> Output:
    _positive(args.d)
    return _decomposition_output(decompose_mpd(args.d), m_pd(args.d, cfg.precision), cfg)


def cmd_decompose(args, cfg: RunConfig) -> Output:
    return cmd_spd(args, cfg) if args.subject == "sd" else cmd_mpd(args, cfg)


def _positive(d: int):
    if d < 1:
        raise ConfigError("d must be >= 1")


def _certificate_output(cert: IdentityCertificate, cfg: RunConfig) -> Output:
    rows = [{"basis": name, "exponent": e} for name, e in cert.items()]
    text = [cert.describe(), f"residual: {fmt_small(cert.residual)}",
            f"exact: {'true' if cert.exact else 'false'}"]
    return Output(cert.to_dict(), ["basis", "exponent"], rows, text)


def cmd_solve(args, cfg: RunConfig) -> Output:
    try:
        if args.conductor is not None:
            cert = solve_conductor(args.conductor, args.dmax, args.ray)
        else:
            cert = solve_complex_pair(_label(args.character), args.dmax, args.ray)
    except NoSolutionWithinRange as exc:
        payload = {"solution": None, "target": exc.target, "basis": exc.basis,
                   "kernel_dimension": exc.kernel_dim, "reason": exc.reason,
                   "note": "relative to the canonical decompositions and this basis range"}
        return Output(payload, ["field", "value"],
                      [{"field": k, "value": "none" if v is None else v}
                       for k, v in payload.items() if k != "basis"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return _certificate_output(verify_certificate(cert, cfg.precision), cfg)


def cmd_verify(args, cfg: RunConfig) -> Output:
    try:
        with open(args.certificate, encoding="utf-8") as fh:
            cert = IdentityCertificate.from_dict(json.load(fh))
    except (OSError, KeyError, TypeError, json.JSONDecodeError, ValueError) as exc:
        raise ConfigError(f"cannot read certificate {args.certificate}: {exc}") from None
    checked = verify_certificate(cert, cfg.precision)
    out = _certificate_output(checked, cfg)
    tol = mpmath.mpf(10) ** (-cfg.precision + 8)
    if not (checked.exact and checked.residual < tol):
        raise VerificationFailed(out)
    return out


def cmd_table(args, cfg: RunConfig) -> Output:
    rows = tables.TABLES[args.number](cfg.precision)
    payload = {"table": args.number,
               "rows": [{"key": r.key, "status": r.status, "residual": r.residual, **r.payload}
                        for r in rows]}
    flat = [{"key": r.key, "status": r.status, "residual": fmt_small(r.residual)} for r in rows]
    out = Output(payload, ["key", "status", "residual"], flat)
    if args.check and not all(r.ok for r in rows):
        raise VerificationFailed(out)
    return out


def cmd_oracle(args, cfg: RunConfig) -> Output:
    if args.ray_table:
        rows = []
        bad = False
        for ident in golden.ray_identities():
            est = mahler_numeric(ident.polynomial, cfg.nodes, cfg.precision)
            with mpmath.workdps(cfg.precision):
                lhs = d_f(ident.f, cfg.precision)
                rhs = est.value * mpmath.mpf(ident.ratio.numerator) / ident.ratio.denominator
                gap = abs(lhs - rhs)
            ok = gap < mpmath.mpf("1e-5")
            bad |= not ok
            rows.append({"f": ident.f, "ratio": ident.ratio, "polynomial": ident.polynomial.format(),
                         "mahler_numeric": est.value, "d_f": lhs, "gap": gap, "ok": ok})
        out = Output({"rows": rows}, ["f", "ratio", "gap", "ok"],
                     [{**r, "gap": fmt_small(r["gap"])} for r in rows])
        if bad:
            raise VerificationFailed(out)
        return out
    if args.polynomial is None:
        raise ConfigError("oracle needs a polynomial or --ray-table")
    try:
        poly = BivariatePoly.parse(args.polynomial)
    except PolynomialParseError as exc:
        raise ConfigError(str(exc)) from None
    if poly.is_zero():
        raise ConfigError("the zero polynomial has no Mahler measure")
    est = mahler_numeric(poly, cfg.nodes, cfg.precision)
    # quadrature accuracy is far below working precision; print what is meaningful
    value = est.value if abs(est.value) > mpmath.mpf("1e-15") else mpmath.mpf(0)
    return _fields([("polynomial", poly.format()), ("mahler_numeric", fmt_real(value, 15)),
                    ("error_estimate", fmt_small(est.error)), ("nodes", est.nodes)])


# -- main -----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _default_prec() -> int:
    raw = os.environ.get(ENV_PREC)
    if raw is None:
        return 50
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{ENV_PREC} must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec", type=int, default=None,
                        help=f"decimal digits (default ${ENV_PREC} or 50)")
    common.add_argument("--nodes", type=int, default=4096, help="quadrature nodes, power of 2 >= 64")
    common.add_argument("--format", choices=FORMATS, default="text")

    parser = _Parser(prog="pdmahler", description="Mahler measures of P_d and L-value identities")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("dilog", parents=[common], help="Li2, Bloch-Wigner D, Clausen Cl2")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--li2", metavar="Z")
    g.add_argument("--bw", metavar="Z")
    g.add_argument("--clausen", nargs=2, type=int, metavar=("J", "K"), help="Cl2(2 pi J / K)")
    p.set_defaults(func=cmd_dilog)

    p = sub.add_parser("char", parents=[common], help="facts about a Conrey character q.n")
    p.add_argument("label")
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("lvalue", parents=[common], help="d_chi, L'(chi,-1), L(conj chi, 2)")
    p.add_argument("label")
    p.set_defaults(func=cmd_lvalue)

    for name, func, text in (("spd", cmd_spd, "S_d/(2 pi) and its decomposition"),
                             ("mpd", cmd_mpd, "m(P_d) and its decomposition")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("d", type=int)
        p.set_defaults(func=func)

    p = sub.add_parser("decompose", parents=[common], help="decomposition of S_d/(2 pi) or m(P_d)")
    p.add_argument("subject", choices=("sd", "mpd"))
    p.add_argument("d", type=int)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("solve", parents=[common], help="search for an identity certificate")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--conductor", type=int, metavar="F")
    g.add_argument("--character", metavar="Q.N")
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--ray", action="store_true", help="include the conductor-7 auxiliary RayQ7")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", parents=[common], help="check a certificate JSON file")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", parents=[common], help="regenerate a published table")
    p.add_argument("number", type=int, choices=sorted(tables.TABLES))
    p.add_argument("--check", action="store_true", help="exit 2 unless every row matches")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("oracle", parents=[common], help="numeric Mahler measure of a polynomial")
    p.add_argument("polynomial", nargs="?")
    p.add_argument("--ray-table", action="store_true")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, or a usage error already reported by argparse
        return int(exc.code or 0)
    try:
        prec = args.prec if args.prec is not None else _default_prec()
        cfg = RunConfig(prec, args.nodes, args.format)
        out = args.func(args, cfg)
    except VerificationFailed as exc:
        sys.stdout.write(render(exc.output, cfg))
        print("verification failed", file=sys.stderr)
        return EXIT_VERIFY
    except (ConfigError, PolynomialParseError, BranchCutError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (RootFindingError, mpmath.libmp.NoConvergence) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    sys.stdout.write(render(out, cfg))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
