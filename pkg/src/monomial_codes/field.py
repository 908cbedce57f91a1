"""Table-driven arithmetic in GF(p^m) for odd primes p.

Elements are plain Python ints in ``[0, p^m)``: the integer
``c_0 + c_1 p + ... + c_{m-1} p^{m-1}`` encodes the polynomial-basis
coordinates ``(c_0, ..., c_{m-1})`` with respect to the root ``alpha`` of the
modulus.  Zero is the integer 0 and one is the integer 1; the prime subfield
GF(p) is exactly ``{0, 1, ..., p-1}``.

Multiplication goes through discrete-log tables and addition through a Zech
logarithm table, so scalar operations are a handful of list lookups and the
vectorised variants are numpy gathers.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np
import sympy

from .errors import (
    DivisionByZero,
    NonPrime,
    NoPrimitivePolynomial,
    NotADivisor,
    NotInSubfield,
    ParityViolation,
    SizeCapExceeded,
)

MAX_FIELD_SIZE = 3**13


def _polymulmod(a, b, f, p):
    # a, b reduced (length m), f monic length m+1; all lists low-degree-first
    m = len(f) - 1
    prod = [0] * (2 * m - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for deg in range(len(prod) - 1, m - 1, -1):
        c = prod[deg] % p
        if c:
            for j in range(m + 1):
                prod[deg - m + j] -= c * f[j]
    return [c % p for c in prod[:m]]


def _x_power_mod(e, f, p):
    m = len(f) - 1
    result = [1] + [0] * (m - 1)
    if m == 1:
        base = [(-f[0]) % p]
    else:
        base = [0, 1] + [0] * (m - 2)
    while e:
        if e & 1:
            result = _polymulmod(result, base, f, p)
        base = _polymulmod(base, base, f, p)
        e >>= 1
    return result


def is_primitive_polynomial(f, p):
    """True when the monic ``f`` (low-degree-first) has a root of order p^m - 1.

    Primitivity implies irreducibility: if ``f`` factored, the unit group of
    GF(p)[x]/(f) would have fewer than p^m - 1 elements.
    """
    m = len(f) - 1
    n = p**m - 1
    one = [1] + [0] * (m - 1)
    if _x_power_mod(n, f, p) != one:
        return False
    return all(_x_power_mod(n // r, f, p) != one for r in _prime_divisors(n))


@functools.lru_cache(maxsize=None)
def _prime_divisors(n):
    return tuple(sympy.factorint(n))


def _is_primitive_root(g, p):
    return g % p != 0 and all(pow(g, (p - 1) // r, p) != 1 for r in _prime_divisors(p - 1))


def smallest_primitive_polynomial(p, m):
    """Lexicographically smallest monic primitive polynomial of degree m.

    Coefficients are compared low-degree-first, i.e. ``c_0`` is the most
    significant key.  Returns the full coefficient tuple ``(c_0, ..., c_{m-1}, 1)``.
    """
    # the norm of a primitive element, (-1)^m c_0, generates GF(p)^*
    sign = -1 if m % 2 else 1
    for low in itertools.product(range(p), repeat=m):
        if not _is_primitive_root(sign * low[0], p):
            continue
        f = list(low) + [1]
        if is_primitive_polynomial(f, p):
            return tuple(f)
    raise NoPrimitivePolynomial(f"no primitive polynomial of degree {m} over GF({p})")


def _power_table(modulus, p):
    """Coordinates of alpha^0 .. alpha^(n-1), built by repeated doubling."""
    m = len(modulus) - 1
    n = p**m - 1
    companion = np.zeros((m, m), dtype=np.int64)
    for j in range(1, m):
        companion[j, j - 1] = 1
    for j in range(m):
        companion[j, m - 1] = (-modulus[j]) % p

    coords = np.zeros((n, m), dtype=np.int64)
    coords[0, 0] = 1
    step = companion.copy()  # companion ** filled
    filled = 1
    while filled < n:
        take = min(filled, n - filled)
        coords[filled:filled + take] = (coords[:take] @ step.T) % p
        filled += take
        step = (step @ step) % p
    return coords


def _readonly(a):
    a.flags.writeable = False
    return a


class Field:
    """An immutable, fully tabulated GF(p^m).

    Use :func:`build_field` rather than instantiating directly; it validates
    the parameters and caches one instance per ``(p, m)``.
    """

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]):
        self.p = p
        self.m = m
        self.q = p**m
        self.n = self.q - 1
        self.modulus = modulus

        coords = _power_table(modulus, p)
        weights = p ** np.arange(m, dtype=np.int64)
        exp = coords @ weights
        if len(np.unique(exp)) != self.n:
            raise NoPrimitivePolynomial(f"modulus {modulus} is not primitive")
        log = np.full(self.q, -1, dtype=np.int64)
        log[exp] = np.arange(self.n, dtype=np.int64)

        low = exp % p
        one_plus = exp - low + (low + 1) % p
        zech = log[one_plus]  # -1 where 1 + alpha^i == 0

        self.exp_table = _readonly(exp)
        self.log_table = _readonly(log)
        self.zech_table = _readonly(zech)
        self._exp = exp.tolist()
        self._log = log.tolist()
        self._zech = zech.tolist()
        self._half = self.n // 2  # log of -1

        trace_log = np.zeros(self.n, dtype=np.int64)
        idx = np.arange(self.n, dtype=np.int64)
        for j in range(m):
            trace_log = self.add_vec(trace_log, exp[(idx * pow(p, j, self.n)) % self.n])
        if trace_log.max() >= p:
            raise AssertionError("absolute trace left the prime field")
        self.trace_log = _readonly(trace_log.astype(np.int8))
        # doubled copy so that trace_log2[i + j] needs no reduction for i, j < n
        self.trace_log2 = _readonly(np.concatenate([self.trace_log, self.trace_log]))
        self._trace = self.trace_log.tolist()

    def __repr__(self):
        return f"Field(p={self.p}, m={self.m}, modulus={self.modulus})"

    # -- representation -------------------------------------------------
    @property
    def alpha(self) -> int:
        return self._exp[1 % self.n]

    def element(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.m:
            raise ValueError("too many coefficients")
        return sum((c % self.p) * self.p**i for i, c in enumerate(coeffs))

    def coeffs(self, x: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            x, c = divmod(x, self.p)
            out.append(c)
        return tuple(out)

    def exp(self, i: int) -> int:
        return self._exp[i % self.n]

    def log(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero("discrete log of zero")
        return self._log[x]

    # -- scalar arithmetic ----------------------------------------------
    def add(self, x: int, y: int) -> int:
        if x == 0:
            return y
        if y == 0:
            return x
        lx = self._log[x]
        z = self._zech[(self._log[y] - lx) % self.n]
        if z < 0:
            return 0
        return self._exp[(lx + z) % self.n]

    def neg(self, x: int) -> int:
        if x == 0:
            return 0
        return self._exp[(self._log[x] + self._half) % self.n]

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self._exp[(self._log[x] + self._log[y]) % self.n]

    def inv(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero("inverse of zero")
        return self._exp[(-self._log[x]) % self.n]

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, e: int) -> int:
        if x == 0:
            if e == 0:
                return 1
            if e < 0:
                raise DivisionByZero("negative power of zero")
            return 0
        return self._exp[(self._log[x] * e) % self.n]

    def arith(self, op: str, *operands: int) -> int:
        """Dispatch by name: add, sub, mul, div, inv, neg, pow."""
        try:
            fn = {
                "add": self.add, "sub": self.sub, "mul": self.mul, "div": self.div,
                "inv": self.inv, "neg": self.neg, "pow": self.pow,
            }[op]
        except KeyError:
            raise ValueError(f"unknown operation {op!r}") from None
        return fn(*operands)

    # -- vectorised arithmetic ------------------------------------------
    def add_vec(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        x, y = np.broadcast_arrays(x, y)
        lx = self.log_table[x]
        ly = self.log_table[y]
        z = self.zech_table[(ly - lx) % self.n]
        out = np.where(z < 0, 0, self.exp_table[(lx + np.maximum(z, 0)) % self.n])
        out = np.where(x == 0, y, out)
        return np.where(y == 0, x, out)

    def neg_vec(self, x):
        x = np.asarray(x, dtype=np.int64)
        out = self.exp_table[(self.log_table[x] + self._half) % self.n]
        return np.where(x == 0, 0, out)

    def mul_vec(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        out = self.exp_table[(self.log_table[x] + self.log_table[y]) % self.n]
        return np.where((x == 0) | (y == 0), 0, out)

    def pow_vec(self, x, e: int):
        x = np.asarray(x, dtype=np.int64)
        out = self.exp_table[(self.log_table[x] * (e % self.n)) % self.n]
        if e == 0:
            return np.ones_like(x)
        return np.where(x == 0, 0, out)

    # -- traces and characters ------------------------------------------
    def _check_divisor(self, e):
        if e < 1 or self.m % e:
            raise NotADivisor(f"{e} does not divide m={self.m}")

    def trace(self, x: int, e: int = 1) -> int:
        """Relative trace from GF(p^m) down to GF(p^e)."""
        self._check_divisor(e)
        if x == 0:
            return 0
        if e == 1:
            return self._trace[self._log[x]]
        lx = self._log[x]
        acc = 0
        for i in range(self.m // e):
            acc = self.add(acc, self._exp[(lx * pow(self.p, e * i, self.n)) % self.n])
        return acc

    def trace_vec(self, x, e: int = 1):
        self._check_divisor(e)
        x = np.asarray(x, dtype=np.int64)
        lx = self.log_table[x]
        if e == 1:
            out = self.trace_log[np.maximum(lx, 0)].astype(np.int64)
            return np.where(x == 0, 0, out)
        acc = np.zeros_like(x)
        for i in range(self.m // e):
            term = self.exp_table[(lx * pow(self.p, e * i, self.n)) % self.n]
            acc = self.add_vec(acc, np.where(x == 0, 0, term))
        return acc

    def in_subfield(self, x: int, e: int) -> bool:
        self._check_divisor(e)
        return self.pow(x, self.p**e) == x

    def subfield_elements(self, e: int) -> list[int]:
        """Nonzero elements of GF(p^e), in ascending discrete-log order."""
        self._check_divisor(e)
        step = self.n // (self.p**e - 1)
        return [self._exp[j * step] for j in range(self.p**e - 1)]

    def quad_char(self, x: int, t: int | None = None) -> int:
        """Quadratic character of GF(p^t) evaluated at ``x`` (t defaults to m)."""
        t = self.m if t is None else t
        self._check_divisor(t)
        if x == 0:
            return 0
        step = self.n // (self.p**t - 1)
        lx = self._log[x]
        if lx % step:
            raise NotInSubfield(f"element {x} is not in GF({self.p}^{t})")
        return -1 if (lx // step) % 2 else 1

    def is_square(self, x: int) -> bool:
        return x != 0 and self._log[x] % 2 == 0

    def fixed_nonsquare(self, e: int) -> int:
        """The non-square of GF(p^e) with the smallest discrete log.

        Requires m/e odd, which makes it a non-square of GF(p^m) too.
        """
        self._check_divisor(e)
        if (self.m // e) % 2 == 0:
            raise ParityViolation(f"m/e = {self.m // e} is even")
        theta = self._exp[self.n // (self.p**e - 1)]
        if self.quad_char(theta, self.m) != -1:
            raise AssertionError("subfield non-square became a square")
        return theta

    def descriptor(self) -> str:
        lines = [
            f"p={self.p}",
            f"m={self.m}",
            f"size={self.q}",
            "modulus=" + ",".join(str(c) for c in self.modulus),
            "alpha=root of modulus; log(alpha^i)=i for 0<=i<p^m-1; log(0) undefined",
        ]
        return "\n".join(lines) + "\n"


def validate_field_params(p: int, m: int) -> None:
    if not isinstance(p, int) or p < 3 or not sympy.isprime(p):
        raise NonPrime(f"p={p} must be an odd prime")
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"m={m} must be a positive integer")
    if p**m > MAX_FIELD_SIZE:
        raise SizeCapExceeded(f"p^m = {p}^{m} exceeds the cap 3^13")


@functools.lru_cache(maxsize=None)
def build_field(p: int, m: int) -> Field:
    """Deterministically construct GF(p^m) from its smallest primitive polynomial."""
    validate_field_params(p, m)
    return Field(p, m, smallest_primitive_polynomial(p, m))
