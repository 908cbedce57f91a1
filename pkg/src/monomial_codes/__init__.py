"""Ternary trace codes from power functions.

Modules:

* :mod:`~monomial_codes.field` - table-driven GF(p^m)
* :mod:`~monomial_codes.exponents` - the congruence for d and APN exponents
* :mod:`~monomial_codes.cyclotomic` - exact integers of Z[w]
* :mod:`~monomial_codes.expsums` - Gauss sums, quadratic forms, T(u, v) and counting identities
* :mod:`~monomial_codes.codes` - the codes C_D(a), weight distributions and verification
"""

from .codes import build_code, expected_distribution, verify, weight_distribution
from .cyclotomic import CycInt
from .exponents import apn_catalog, solve_d
from .field import build_field

__version__ = "0.1.0"

__all__ = [
    "CycInt",
    "apn_catalog",
    "build_code",
    "build_field",
    "expected_distribution",
    "solve_d",
    "verify",
    "weight_distribution",
]
