"""Exponents d with d(p^k + 1) = 2 (mod p^m - 1), and the ternary APN families."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidExponent,
    NoWitnessK,
    ParityViolation,
    SizeCapExceeded,
    UnclassifiableResidue,
)
from .field import Field

DIFFERENTIAL_CAP = 3**9


class ResidueClass(enum.Enum):
    ONE = "d=1 mod p^e-1"
    ONE_PLUS_HALF = "d=1+(p^e-1)/2 mod p^e-1"


@dataclass(frozen=True)
class ExponentSolution:
    d: int
    k: int
    e: int
    residue_class: ResidueClass


def check_parity(m: int, k: int) -> int:
    """Return e = gcd(k, m) after checking that m/e is odd and at least 3."""
    if k < 1 or m < 1:
        raise ParityViolation(f"k={k}, m={m} must be positive")
    e = math.gcd(k, m)
    h = m // e
    if h % 2 == 0 or h < 3:
        raise ParityViolation(f"m/gcd(k,m) = {h} must be odd and >= 3")
    return e


def satisfies_congruence(p: int, m: int, k: int, d: int) -> bool:
    return (d * (p**k + 1)) % (p**m - 1) == 2 % (p**m - 1)


def classify_d(d: int, p: int, e: int) -> ResidueClass:
    modulus = p**e - 1
    r = d % modulus
    if r == 1 % modulus:
        return ResidueClass.ONE
    if r == (1 + modulus // 2) % modulus:
        return ResidueClass.ONE_PLUS_HALF
    raise UnclassifiableResidue(f"d={d} is neither 1 nor 1+{modulus // 2} mod {modulus}")


def solve_d(p: int, m: int, k: int) -> list[ExponentSolution]:
    """Both solutions of the congruence in [0, p^m - 1), smallest first."""
    e = check_parity(m, k)
    n = p**m - 1
    s = p**k + 1
    if math.gcd(s, n) != 2:
        raise AssertionError(f"gcd(p^k+1, p^m-1) = {math.gcd(s, n)}, expected 2")
    half = n // 2
    d0 = pow(s // 2, -1, half) if half > 1 else 0
    sols = sorted({d0 % n, (d0 + half) % n})
    out = []
    for d in sols:
        if not satisfies_congruence(p, m, k, d):
            raise AssertionError(f"d={d} failed re-substitution")
        out.append(ExponentSolution(d, k, e, classify_d(d, p, e)))
    return out


def validate_exponent(p: int, m: int, k: int, d: int) -> int:
    e = check_parity(m, k)
    if not satisfies_congruence(p, m, k, d):
        raise InvalidExponent(f"d={d} does not satisfy d(p^k+1) = 2 mod p^m-1 for k={k}")
    return e


@dataclass(frozen=True)
class ApnExponent:
    d: int
    family: str
    k: int


def apn_catalog(m: int) -> list[ApnExponent]:
    """The three ternary APN exponent families, each with its smallest witness k."""
    if m < 3 or m % 2 == 0:
        raise ParityViolation(f"m={m} must be odd and >= 3")
    n = 3**m - 1
    raw = [
        ("i", (3**m + 1) // 4 + (3**m - 1) // 2),
        ("ii", 3 ** ((m + 1) // 2) - 1),
    ]
    if m % 4 == 3:
        raw.append(("iii", (3 ** ((m + 1) // 4) - 1) * (3 ** ((m + 1) // 2) + 1)))

    out = []
    for family, d in raw:
        d %= n
        for k in range(1, m):
            h = m // math.gcd(k, m)
            if h % 2 == 1 and h >= 3 and satisfies_congruence(3, m, k, d):
                out.append(ApnExponent(d, family, k))
                break
        else:
            raise NoWitnessK(f"family ({family}) d={d}: no k in [1,{m}) satisfies the congruence")
    return out


def differential_uniformity(field: Field, d: int, chunk: int = 256) -> int:
    """max over a != 0 and b of #{x : (x+a)^d - x^d = b}, by exhaustive scan."""
    if field.q > DIFFERENTIAL_CAP:
        raise SizeCapExceeded(f"differential scan capped at 3^9 elements, got {field.q}")
    q = field.q
    xs = np.arange(q, dtype=np.int64)
    fx = field.pow_vec(xs, d)
    best = 0
    for start in range(1, q, chunk):
        a = np.arange(start, min(start + chunk, q), dtype=np.int64)
        shifted = field.add_vec(xs[None, :], a[:, None])
        diff = field.add_vec(fx[shifted], field.neg_vec(fx)[None, :])
        rows = np.arange(len(a), dtype=np.int64)[:, None] * q
        counts = np.bincount((diff + rows).ravel(), minlength=len(a) * q)
        best = max(best, int(counts.max()))
    return best
