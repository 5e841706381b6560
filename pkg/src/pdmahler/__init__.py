"""Mahler measures of P_d(x, y) = sum_{i+j<=d} x^i y^j, their exact expansion in
L'(chi, -1) values of primitive odd Dirichlet characters, and integer
combinations of P_d isolating a single L-value."""

from .characters import DirichletCharacter, conrey, parse_label, quadratic_character
from .cyclo import Cyclo
from .decomposition import PrimitiveDecomposition, decompose_mpd, decompose_sd, verify_decomposition
from .dilog import bloch_wigner, clausen2, li2
from .lvalues import d_chi, d_f, l_prime_minus1, l_prime_via_functional_eq
from .mahler import CombinationProduct, combination_measure, limit_gap, m_pd, mahler_numeric, s_d
from .polynomial import BivariatePoly, pd_poly, ray_q7
from .solver import (IdentityCertificate, NoSolutionWithinRange, known_solutions, solve_complex_pair,
                     solve_conductor, verify_certificate)

__all__ = [
    "BivariatePoly", "CombinationProduct", "Cyclo", "DirichletCharacter", "IdentityCertificate",
    "NoSolutionWithinRange", "PrimitiveDecomposition", "bloch_wigner", "clausen2",
    "combination_measure", "conrey", "d_chi", "d_f", "decompose_mpd", "decompose_sd", "known_solutions",
    "l_prime_minus1", "l_prime_via_functional_eq", "li2", "limit_gap", "m_pd", "mahler_numeric",
    "parse_label", "pd_poly", "quadratic_character", "ray_q7", "s_d", "solve_complex_pair",
    "solve_conductor", "verify_certificate", "verify_decomposition",
]
__version__ = "0.1.0"
