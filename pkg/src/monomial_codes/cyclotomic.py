"""Exact arithmetic in Z[w], w a primitive p-th root of unity.

A :class:`CycInt` stores coordinates in the integral basis
``1, w, ..., w^(p-2)``; the ``w^(p-1)`` coordinate is always eliminated with
``1 + w + ... + w^(p-1) = 0``, so equality is coordinatewise and instances are
hashable histogram keys.
"""

from __future__ import annotations

import cmath
import math
from functools import reduce

from .errors import DivisionByZero, MixedP


class CycInt:
    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != p - 1:
            raise ValueError(f"expected {p - 1} coordinates, got {len(coeffs)}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CycInt is immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_counts(cls, p: int, counts) -> CycInt:
        """sum_j counts[j] * w^j for a length-p (or shorter) bucket vector."""
        counts = [int(c) for c in counts]
        counts += [0] * (p - len(counts))
        top = counts[p - 1]
        return cls(p, [c - top for c in counts[: p - 1]])

    @classmethod
    def integer(cls, p: int, n: int) -> CycInt:
        return cls(p, [n] + [0] * (p - 2))

    @classmethod
    def zero(cls, p: int) -> CycInt:
        return cls.integer(p, 0)

    @classmethod
    def omega(cls, p: int, j: int = 1) -> CycInt:
        counts = [0] * p
        counts[j % p] = 1
        return cls.from_counts(p, counts)

    # -- ring operations ------------------------------------------------
    def _coerce(self, other) -> CycInt:
        if isinstance(other, CycInt):
            if other.p != self.p:
                raise MixedP(f"cannot combine p={self.p} with p={other.p}")
            return other
        if isinstance(other, int):
            return CycInt.integer(self.p, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycInt(self.p, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.p, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycInt(self.p, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        buckets = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    buckets[(i + j) % p] += a * b
        return CycInt.from_counts(p, buckets)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        out = CycInt.integer(self.p, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def scale(self, n: int) -> CycInt:
        return CycInt(self.p, [n * a for a in self.coeffs])

    def exact_div(self, n: int) -> CycInt | None:
        """``self / n`` when every coordinate is divisible by ``n``, else None."""
        if n == 0:
            raise DivisionByZero("division of a cyclotomic integer by zero")
        if any(a % n for a in self.coeffs):
            return None
        return CycInt(self.p, [a // n for a in self.coeffs])

    def conjugate(self) -> CycInt:
        counts = [0] * self.p
        for j, a in enumerate(self.coeffs):
            counts[(-j) % self.p] += a
        return CycInt.from_counts(self.p, counts)

    # -- predicates and conversions -------------------------------------
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def __complex__(self):
        w = cmath.exp(2j * math.pi / self.p)
        return sum(a * w**j for j, a in enumerate(self.coeffs))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __lt__(self, other):
        # arbitrary but total, for deterministic output ordering
        return (self.p, self.coeffs) < (other.p, other.coeffs)

    def __repr__(self):
        return f"CycInt({self.p}, {list(self.coeffs)})"

    def __str__(self):
        return self.render()

    def render(self) -> str:
        """Human form such as ``3^2*(1+2w)`` or ``-27``."""
        if self.is_rational():
            return str(self.coeffs[0])
        g = reduce(math.gcd, self.coeffs)
        sign = -1 if next(a for a in self.coeffs if a) < 0 else 1
        g *= sign
        inner = _poly_str([a // g for a in self.coeffs])
        if abs(g) == 1:
            return inner if g == 1 else f"-({inner})"
        head = "-" if g < 0 else ""
        mag, k = abs(g), 0
        while mag % self.p == 0:
            mag //= self.p
            k += 1
        if mag == 1:
            factor = f"{self.p}^{k}" if k > 1 else f"{self.p}"
        else:
            factor = str(abs(g))
        return f"{head}{factor}*({inner})"


def _poly_str(coeffs) -> str:
    parts = []
    for j, a in enumerate(coeffs):
        if not a:
            continue
        mono = "" if j == 0 else ("w" if j == 1 else f"w^{j}")
        if j == 0:
            term = str(abs(a))
        elif abs(a) == 1:
            term = mono
        else:
            term = f"{abs(a)}{mono}"
        sign = "-" if a < 0 else "+"
        parts.append((sign, term))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, term in parts[1:]:
        out += sign + term
    return out
