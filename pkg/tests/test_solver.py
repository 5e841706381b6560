import json
from fractions import Fraction
from math import gcd

import mpmath
import pytest

from pdmahler.characters import parse_label
from pdmahler.solver import (IdentityCertificate, NoSolutionWithinRange, coefficient_matrix,
                             complex_target, exact_check, kernel_certified_empty, known_solutions,
                             quadratic_target, same_line, solve_complex_pair, solve_conductor,
                             verify_certificate)

PREC = 50
TOL40 = mpmath.mpf(10) ** -40


def published(kind, label):
    return next(c for c in known_solutions()
                if c.target.kind == kind and c.target.character.label == label)


def test_coefficient_matrix_small():
    mat = coefficient_matrix(2)
    assert mat.basis == ("P1", "P2")
    assert {c.label for c in mat.columns} == {"3.2", "4.3"}
    chi3, chi4 = parse_label("3.2"), parse_label("4.3")
    assert mat.coefficient(0, chi3) == 1 and mat.coefficient(0, chi4) == 0
    assert mat.coefficient(1, chi3) == Fraction(-1, 2) and mat.coefficient(1, chi4) == 1
    ray = coefficient_matrix(1, include_ray_q7=True)
    assert ray.basis[-1] == "RayQ7"
    assert ray.coefficient(len(ray.basis) - 1, parse_label("7.6")) == Fraction(8, 7)


def test_coefficient_matrix_reconstructs_decompositions():
    from pdmahler.decomposition import decompose_mpd

    mat = coefficient_matrix(10)
    for i in range(10):
        dec = decompose_mpd(i + 1)
        for chi in mat.columns:
            assert mat.coefficient(i, chi) == dec[chi]


def test_solve_examples():
    c4 = solve_conductor(4, 2)
    assert dict(c4.exponents) == {"P1": 1, "P2": 2} and c4.multiple == 2
    c3 = solve_conductor(3, 1)
    assert dict(c3.exponents) == {"P1": 1} and c3.multiple == 1
    c8 = solve_conductor(8, 6)
    assert same_line(c8.exponents, {"P1": 33, "P2": -30, "P5": 21, "P6": 28})


def test_solve_complex_pairs():
    c5 = solve_complex_pair(parse_label("5.2"), 8)
    assert same_line(c5.exponents, published("complex_pair", "5.2").exponents)
    c7 = solve_complex_pair(parse_label("7.3"), 12, include_ray_q7=True)
    assert same_line(c7.exponents, published("complex_pair", "7.3").exponents)
    assert c7.exponents["RayQ7"] < 0
    # either member of the pair names the same target
    assert solve_complex_pair(parse_label("5.3"), 8).exponents == c5.exponents


@pytest.mark.parametrize("cert", known_solutions(), ids=lambda c: c.target.character.label)
def test_solver_results_are_sound(cert):
    d_max = max(int(k[1:]) for k in cert.exponents if k.startswith("P"))
    ray = "RayQ7" in cert.exponents
    if cert.target.kind == "quadratic":
        got = solve_conductor(cert.target.conductor, d_max, ray)
    else:
        got = solve_complex_pair(cert.target.character, d_max, ray)
    checked = verify_certificate(got, PREC)
    assert checked.exact and checked.residual < TOL40
    assert got.multiple > 0
    # normalised: exponents together with the numerator of q are coprime
    g = abs(got.multiple.numerator)
    for e in got.exponents.values():
        g = gcd(g, e)
    assert g == 1


def test_known_solutions():
    certs = known_solutions()
    assert len(certs) == 9
    assert sorted(c.target.conductor for c in certs if c.target.kind == "quadratic") == [3, 4, 8, 15, 20, 24]
    assert sorted(c.target.conductor for c in certs if c.target.kind == "complex_pair") == [5, 7, 9]
    c15 = published("quadratic", "15.14")
    assert max(int(k[1:]) for k in c15.exponents) == 13 and c15.multiple == 45
    for cert in certs:
        checked = verify_certificate(cert, PREC)
        assert checked.exact and checked.residual < TOL40


@pytest.mark.parametrize("cert", known_solutions(), ids=lambda c: c.target.character.label)
def test_perturbation_breaks_certificate(cert):
    name = sorted(cert.exponents)[0]
    bad = dict(cert.exponents)
    bad[name] += 1
    checked = verify_certificate(IdentityCertificate(cert.target, bad, cert.multiple), 30)
    assert not checked.exact and checked.residual > 1e-3


def test_conductor_11_has_no_solution_in_range():
    for d_max in (6, 10):
        with pytest.raises(NoSolutionWithinRange) as info:
            solve_conductor(11, d_max)
        assert info.value.reason
        assert kernel_certified_empty(quadratic_target(11), d_max)


def test_invalid_targets():
    with pytest.raises(ValueError):
        solve_conductor(12, 5)
    with pytest.raises(ValueError):
        solve_complex_pair(parse_label("4.3"), 5)  # real
    with pytest.raises(ValueError):
        complex_target(parse_label("10.7"))  # imprimitive


def test_certificate_json_round_trip():
    for cert in known_solutions():
        checked = verify_certificate(cert, 30)
        data = json.loads(json.dumps(checked.to_dict()))
        assert data["multiple"] == f"{cert.multiple.numerator}/{cert.multiple.denominator}"
        back = IdentityCertificate.from_dict(data)
        assert back.target == cert.target and dict(back.exponents) == dict(cert.exponents)
        assert back.multiple == cert.multiple and back.exact is True


def test_solver_is_deterministic():
    a = solve_complex_pair(parse_label("9.2"), 16)
    b = solve_complex_pair(parse_label("9.2"), 16)
    assert a == b


def test_exact_check_rejects_wrong_multiple():
    cert = published("quadratic", "8.3")
    assert exact_check(cert)
    assert not exact_check(IdentityCertificate(cert.target, cert.exponents, cert.multiple + 1))
