"""Exact character sums over GF(p^m).

All sums are accumulated as a histogram of exponents of w (one bucket per
residue mod p) and converted to a :class:`~monomial_codes.cyclotomic.CycInt`,
so every value below is exact.  Half-integral powers of p are expressed
through the quadratic Gauss sum of the prime field,
``g = sum_x (x/p) w^x``, which equals ``sqrt(p)`` for p = 1 mod 4 and
``i sqrt(p)`` for p = 3 mod 4.

The central objects are

* ``Q_{u,v}(x) = Tr_e^m(u x^(p^k+1) + v x^2)``, a quadratic form over
  GF(q), q = p^e, e = gcd(k, m), in h = m/e variables, and
* ``T(u, v) = sum_x w^Tr(u x^(p^k+1) + v x^2)``.
"""

from __future__ import annotations

import functools
import math
from collections import Counter
from dataclasses import dataclass, field as dc_field

import numpy as np

from .cyclotomic import CycInt
from .errors import (
    BudgetExceeded,
    NonIntegerCollapse,
    PreconditionViolated,
    SpectrumMismatch,
    ZeroB,
    ZeroForm,
)
from .exponents import ResidueClass, check_parity, classify_d
from .field import Field

NAIVE_BUDGET = 3**12
_CHUNK_ELEMS = 1 << 22


# ---------------------------------------------------------------------------
# Gauss sums and half-integral powers


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def prime_gauss_sum(p: int) -> CycInt:
    """``sum_{x=1}^{p-1} (x/p) w^x`` for the prime field."""
    return CycInt.from_counts(p, [legendre(x, p) for x in range(p)])


def half_power(p: int, n: int, imaginary: bool = False) -> CycInt:
    """Exact ``p^(n/2)`` (times i when ``imaginary``) as an element of Z[w].

    Raises ValueError when the requested number does not lie in Q(w_p).
    """
    if n < 0:
        raise ValueError("negative exponent")
    g = prime_gauss_sum(p)
    if p % 4 == 1:
        if imaginary:
            raise ValueError(f"i is not in Q(w_{p})")
        if n % 2 == 0:
            return CycInt.integer(p, p ** (n // 2))
        return g.scale(p ** ((n - 1) // 2))
    # p = 3 mod 4: g = i sqrt(p)
    if n % 2 == 0:
        if imaginary:
            raise ValueError(f"i * {p}^{n // 2} is not in Q(w_{p})")
        return CycInt.integer(p, p ** (n // 2))
    if not imaginary:
        raise ValueError(f"sqrt({p}) is not in Q(w_{p})")
    return g.scale(p ** ((n - 1) // 2))


def gauss_sum_closed(p: int, t: int) -> CycInt:
    """Closed form of the quadratic Gauss sum of GF(p^t)."""
    sign = -1 if (t - 1) % 2 else 1
    if p % 4 == 1:
        return half_power(p, t).scale(sign)
    # (-1)^(t-1) i^t p^(t/2) = (-1)^(t-1) g^t with g = i sqrt(p)
    g = prime_gauss_sum(p)
    return (g**t).scale(sign)


def char_sum(field: Field, weight) -> CycInt:
    """``sum_x w^weight(x)`` over all elements of ``field``.

    ``weight`` is either an integer array indexed by element or a callable
    mapping the array ``arange(q)`` to such an array.
    """
    if callable(weight):
        weight = weight(np.arange(field.q, dtype=np.int64))
    weight = np.asarray(weight, dtype=np.int64) % field.p
    return CycInt.from_counts(field.p, np.bincount(weight, minlength=field.p))


def subfield_abs_trace(field: Field, xs, t: int):
    """Tr_1^t on elements of the subfield GF(p^t), vectorised."""
    field._check_divisor(t)
    xs = np.asarray(xs, dtype=np.int64)
    lx = field.log_table[xs]
    acc = np.zeros_like(xs)
    for i in range(t):
        term = field.exp_table[(lx * pow(field.p, i, field.n)) % field.n]
        acc = field.add_vec(acc, np.where(xs == 0, 0, term))
    return acc


def gauss_sum_brute(field: Field, t: int) -> CycInt:
    """``sum_{x in GF(p^t)*} eta(x) w^Tr(x)`` by direct enumeration."""
    elems = np.array(field.subfield_elements(t), dtype=np.int64)
    tr = subfield_abs_trace(field, elems, t)
    signs = np.where(np.arange(len(elems)) % 2 == 0, 1, -1)
    buckets = np.zeros(field.p, dtype=np.int64)
    np.add.at(buckets, tr, signs)
    return CycInt.from_counts(field.p, buckets)


# ---------------------------------------------------------------------------
# the quadratic form Q_{u,v}


@dataclass(frozen=True)
class QuadForm:
    u: int
    v: int
    k: int
    e: int
    h: int
    rank: int
    disc_class: int
    diagonal: tuple[int, ...] = ()


def quad_eval(field: Field, u: int, v: int, k: int, x: int) -> int:
    e = check_parity(field.m, k)
    y = field.add(field.mul(u, field.pow(x, field.p**k + 1)), field.mul(v, field.mul(x, x)))
    return field.trace(y, e)


def quad_eval_vec(field: Field, u: int, v: int, k: int, xs=None):
    e = check_parity(field.m, k)
    if xs is None:
        xs = np.arange(field.q, dtype=np.int64)
    y = field.add_vec(
        field.mul_vec(u, field.pow_vec(xs, field.p**k + 1)),
        field.mul_vec(v, field.pow_vec(xs, 2)),
    )
    return field.trace_vec(y, e)


class _PrimeOps:
    """Scalar arithmetic on GF(p) elements, which are the ints 0..p-1 in any tower."""

    def __init__(self, p):
        self.p = p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        return pow(a, -1, self.p)


def _subfield_ops(field: Field, e: int):
    return _PrimeOps(field.p) if e == 1 else field


@functools.lru_cache(maxsize=32)
def _basis_points(field: Field, k: int, h: int):
    """Logs of x^(p^k+1) and x^2 for the basis alpha^i and all pairwise sums."""
    basis = [field.exp(i) for i in range(h)]
    points = basis + [field.add(basis[i], basis[j]) for i in range(h) for j in range(i + 1, h)]
    n, s = field.n, field.p**k + 1
    return [((field.log(x) * s) % n, (2 * field.log(x)) % n) for x in points]


def _form_matrix(field: Field, u: int, v: int, k: int):
    """Symmetric matrix A with Q(sum x_i b_i) = x^T A x, basis b_i = alpha^i."""
    e = check_parity(field.m, k)
    if u == 0 and v == 0:
        raise ZeroForm("Q_{0,0} is the zero form")
    h = field.m // e
    n = field.n
    lu = field.log(u) if u else None
    lv = field.log(v) if v else None
    values = []
    for lpk, lsq in _basis_points(field, k, h):
        y1 = field.exp(lu + lpk) if u else 0
        y2 = field.exp(lv + lsq) if v else 0
        values.append(field.trace(field.add(y1, y2), e))
    ops = _subfield_ops(field, e)
    half = ops.inv(2)
    A = [[0] * h for _ in range(h)]
    pos = h
    for i in range(h):
        A[i][i] = values[i]
        for j in range(i + 1, h):
            b_ij = ops.sub(ops.sub(values[pos], values[i]), values[j])
            A[i][j] = A[j][i] = ops.mul(b_ij, half)
            pos += 1
    return A, e, h


def _matrix_rank(ops, M) -> int:
    M = [row[:] for row in M]
    rows, cols = len(M), len(M[0]) if M else 0
    rank = 0
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if M[r][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = ops.inv(M[rank][c])
        for r in range(rows):
            if r != rank and M[r][c]:
                f = ops.mul(M[r][c], inv)
                M[r] = [ops.sub(a, ops.mul(f, b)) for a, b in zip(M[r], M[rank])]
        rank += 1
    return rank


def _congruence_diagonal(ops, A) -> list[int]:
    """Nonzero diagonal entries of P^T A P for some invertible P (odd characteristic)."""
    A = [row[:] for row in A]
    n = len(A)
    diag = []
    for i in range(n):
        piv = next((j for j in range(i, n) if A[j][j]), None)
        if piv is None:
            pair = next(((j, l) for j in range(i, n) for l in range(j + 1, n) if A[j][l]), None)
            if pair is None:
                break
            j, l = pair
            # replace e_j by e_j + e_l; new A[j][j] = 2 A[j][l] != 0
            A[j] = [ops.add(a, b) for a, b in zip(A[j], A[l])]
            for r in range(n):
                A[r][j] = ops.add(A[r][j], A[r][l])
            piv = j
        if piv != i:
            A[i], A[piv] = A[piv], A[i]
            for r in range(n):
                A[r][i], A[r][piv] = A[r][piv], A[r][i]
        d = A[i][i]
        dinv = ops.inv(d)
        for r in range(i + 1, n):
            if A[r][i]:
                f = ops.mul(A[r][i], dinv)
                A[r] = [ops.sub(a, ops.mul(f, b)) for a, b in zip(A[r], A[i])]
                for c in range(n):
                    A[c][r] = ops.sub(A[c][r], ops.mul(f, A[c][i]))
        diag.append(d)
    return diag


def _discriminant_class(field: Field, diag, e: int) -> int:
    delta = 1
    for a in diag:
        delta = field.mul(delta, a)
    return field.quad_char(delta, e)


def quad_rank(field: Field, u: int, v: int, k: int) -> QuadForm:
    """Rank via the kernel of the bilinear-form matrix over GF(p^e)."""
    A, e, h = _form_matrix(field, u, v, k)
    ops = _subfield_ops(field, e)
    rank = _matrix_rank(ops, A)
    diag = _congruence_diagonal(ops, A)
    if len(diag) != rank:
        raise AssertionError("row rank and diagonal length disagree")
    return QuadForm(u, v, k, e, h, rank, _discriminant_class(field, diag, e), tuple(diag))


def _batched_rank_mod_p(M, p):
    """Ranks of a stack of square matrices over GF(p), shape (N, h, h)."""
    M = M % p
    N, h, _ = M.shape
    inv = np.zeros(p, dtype=np.int64)
    inv[1:] = [pow(a, -1, p) for a in range(1, p)]
    pivot_row = np.zeros(N, dtype=np.int64)
    rows = np.arange(h)
    for c in range(h):
        mask = (M[:, :, c] != 0) & (rows[None, :] >= pivot_row[:, None])
        idx = np.nonzero(mask.any(axis=1))[0]
        if len(idx) == 0:
            continue
        r0, r1 = pivot_row[idx], np.argmax(mask[idx], axis=1)
        sub = M[idx]
        lane = np.arange(len(idx))
        tmp = sub[lane, r0].copy()
        sub[lane, r0] = sub[lane, r1]
        sub[lane, r1] = tmp
        sub[lane, r0] = sub[lane, r0] * inv[sub[lane, r0, c]][:, None] % p
        factors = sub[:, :, c].copy()
        factors[lane, r0] = 0
        sub = (sub - factors[:, :, None] * sub[lane, r0][:, None, :]) % p
        M[idx] = sub
        pivot_row[idx] += 1
    return pivot_row


def quad_rank_table(field: Field, k: int):
    """rank(Q_{u,v}) for every pair as a (q, q) array; entry (0, 0) is 0.

    Prime-field forms only (gcd(k, m) = 1); the matrices are assembled from
    traces at the basis points and reduced together.
    """
    e = check_parity(field.m, k)
    if e != 1:
        raise PreconditionViolated("batched ranks need gcd(k, m) = 1")
    q, p, h = field.q, field.p, field.m
    if q * q > NAIVE_BUDGET:
        raise BudgetExceeded(f"rank table needs p^(2m) <= 3^12, got {q}^2")
    pts = np.array(_basis_points(field, k, h), dtype=np.int64)
    all_logs = _logs(field, np.arange(q))
    tu = _trace_terms(field, all_logs, pts[:, 0]).astype(np.int64)
    tv = _trace_terms(field, all_logs, pts[:, 1]).astype(np.int64)
    values = (tu[:, None, :] + tv[None, :, :]).reshape(q * q, -1) % p
    half = pow(2, -1, p)
    A = np.zeros((q * q, h, h), dtype=np.int64)
    pos = h
    for i in range(h):
        A[:, i, i] = values[:, i]
        for j in range(i + 1, h):
            b_ij = (values[:, pos] - values[:, i] - values[:, j]) * half % p
            A[:, i, j] = A[:, j, i] = b_ij
            pos += 1
    return _batched_rank_mod_p(A, p).reshape(q, q)


RADICAL_CAP = 3**6


@functools.lru_cache(maxsize=4)
def _addition_table(field: Field):
    xs = np.arange(field.q, dtype=np.int64)
    table = field.add_vec(xs[:, None], xs[None, :])
    table.flags.writeable = False
    return table


def radical_rank(field: Field, u: int, v: int, k: int) -> int:
    """Rank as h - log_q |W|, W = {z : Q(x+z) = Q(x) for all x}, by enumeration."""
    e = check_parity(field.m, k)
    if u == 0 and v == 0:
        raise ZeroForm("Q_{0,0} is the zero form")
    if field.q > RADICAL_CAP:
        raise BudgetExceeded(f"radical enumeration capped at 3^6 elements, got {field.q}")
    qx = quad_eval_vec(field, u, v, k)
    size = int(np.all(qx[_addition_table(field)] == qx[None, :], axis=1).sum())
    dim = round(math.log(size, field.p**e))
    if (field.p**e) ** dim != size:
        raise AssertionError(f"radical size {size} is not a power of p^e")
    return field.m // e - dim


def form_sum_value(p: int, m: int, e: int, rank: int, disc_class: int) -> CycInt:
    """``sum_x w^Tr_1^e(f(x))`` for a form of given rank and discriminant class."""
    sign = disc_class * (-1 if ((e - 1) * rank) % 2 else 1)
    er = e * rank
    if p % 4 == 1:
        return half_power(p, 2 * m - er).scale(sign)
    if er % 2 == 0:
        sign *= -1 if (er // 2) % 2 else 1
        return half_power(p, 2 * m - er).scale(sign)
    sign *= -1 if ((er - 1) // 2) % 2 else 1
    return half_power(p, 2 * m - er, imaginary=True).scale(sign)


@dataclass(frozen=True)
class Diagonalization:
    rank: int
    disc_class: int
    diagonal: tuple[int, ...]
    form_sum_value: CycInt


def quad_diag(field: Field, u: int, v: int, k: int) -> Diagonalization:
    A, e, _ = _form_matrix(field, u, v, k)
    diag = _congruence_diagonal(_subfield_ops(field, e), A)
    disc = _discriminant_class(field, diag, e)
    value = form_sum_value(field.p, field.m, e, len(diag), disc)
    return Diagonalization(len(diag), disc, tuple(diag), value)


# ---------------------------------------------------------------------------
# T(u, v)


def _exponent_logs(field: Field, k: int):
    idx = np.arange(field.n, dtype=np.int64)
    return (idx * ((field.p**k + 1) % field.n)) % field.n, (2 * idx) % field.n


def _logs(field: Field, xs):
    xs = np.atleast_1d(np.asarray(xs, dtype=np.int64))
    return field.log_table[xs]


def _trace_terms(field: Field, coeff_logs, exps):
    """Tr(c * x) for c = alpha^coeff_logs[i] and x = alpha^exps[j]; rows of zeros for c = 0."""
    safe = np.maximum(coeff_logs, 0)
    out = field.trace_log2[safe[:, None] + exps[None, :]]
    if (coeff_logs < 0).any():
        out = np.where((coeff_logs < 0)[:, None], np.int8(0), out)
    return out


def _bucket_counts(vals, p, n):
    """Row-wise histogram of ``vals mod p`` (vals in [0, 2p-2]), plus x = 0 in bucket 0.

    When p fields of ceil(log2(n+1)) bits fit in an int64, each residue is
    mapped to a one-bit-per-field mask and a single row sum does the counting.
    """
    rows = vals.shape[0]
    bits = int(n).bit_length()
    if p * bits <= 62:
        lut = np.array([1 << (bits * (j % p)) for j in range(2 * p - 1)], dtype=np.int64)
        packed = lut[vals].sum(axis=1)
        mask = (1 << bits) - 1
        counts = np.stack([(packed >> (bits * j)) & mask for j in range(p)], axis=1)
    else:
        residues = (vals % p).astype(np.int64) + (np.arange(rows, dtype=np.int64) * p)[:, None]
        counts = np.bincount(residues.ravel(), minlength=rows * p).reshape(rows, p)
    counts[:, 0] += 1
    return counts


def _canonical(counts):
    return counts[:, :-1] - counts[:, -1:]


def _sum_rows(field: Field, first_logs, first_exps, second_logs=None, second_exps=None, offset=None):
    """Canonical coordinates of sum_x w^(Tr(c1 x^s1) + Tr(c2 x^s2)) row by row."""
    step = max(1, _CHUNK_ELEMS // field.n)
    out = np.empty((len(first_logs), field.p - 1), dtype=np.int64)
    for s in range(0, len(first_logs), step):
        sl = slice(s, s + step)
        vals = _trace_terms(field, first_logs[sl], first_exps)
        if offset is not None:
            vals = vals + offset
        else:
            vals = vals + _trace_terms(field, second_logs[sl], second_exps)
        out[sl] = _canonical(_bucket_counts(vals, field.p, field.n))
    return out


def t_values(field: Field, k: int, us, vs):
    """Canonical coordinates of T(u_i, v_i) for paired arrays (broadcast)."""
    check_parity(field.m, k)
    us, vs = np.broadcast_arrays(np.atleast_1d(us), np.atleast_1d(vs))
    pk1, sq = _exponent_logs(field, k)
    return _sum_rows(field, _logs(field, us), pk1, _logs(field, vs), sq)


@functools.lru_cache(maxsize=64)
def _full_row(field: Field, k: int, v: int):
    pk1, sq = _exponent_logs(field, k)
    offset = _trace_terms(field, _logs(field, v), sq)[0]
    row = _sum_rows(field, _logs(field, np.arange(field.q)), pk1, offset=offset)
    row.flags.writeable = False
    return row


def t_row(field: Field, k: int, v: int, us=None):
    """Canonical coordinates of T(u, v) for fixed v over ``us`` (default: all u)."""
    check_parity(field.m, k)
    row = _full_row(field, k, v)
    return row if us is None else row[np.asarray(us, dtype=np.int64)]


def t_column(field: Field, k: int, u: int, vs=None):
    """Canonical coordinates of T(u, v) for fixed u over ``vs`` (default: all v)."""
    check_parity(field.m, k)
    if vs is None:
        vs = np.arange(field.q, dtype=np.int64)
    pk1, sq = _exponent_logs(field, k)
    offset = _trace_terms(field, _logs(field, u), pk1)[0]
    return _sum_rows(field, _logs(field, vs), sq, offset=offset)


def t_sum(field: Field, u: int, v: int, k: int) -> CycInt:
    return CycInt(field.p, t_values(field, k, [u], [v])[0])


def t_table(field: Field, k: int):
    """Canonical coordinates of T(u, v) for every pair, shape (q, q, p-1).

    Computed as sum_s A_s B_{j-s}^T over one-hot trace matrices, which is the
    full double sum reorganised as matrix products.
    """
    check_parity(field.m, k)
    q, p = field.q, field.p
    if q * q > NAIVE_BUDGET:
        raise BudgetExceeded(f"naive T table needs p^(2m) <= 3^12, got {q}^2")
    all_logs = _logs(field, np.arange(q))
    pk1, sq = _exponent_logs(field, k)
    tu = _trace_terms(field, all_logs, pk1)
    tv = _trace_terms(field, all_logs, sq)
    A = [(tu == s).astype(np.float64) for s in range(p)]
    B = [(tv == s).astype(np.float64) for s in range(p)]
    counts = np.zeros((q, q, p), dtype=np.int64)
    for j in range(p):
        acc = np.zeros((q, q))
        for s in range(p):
            acc += A[s] @ B[(j - s) % p].T
        counts[:, :, j] = np.rint(acc).astype(np.int64)
    counts[:, :, 0] += 1
    return counts[:, :, :-1] - counts[:, :, -1:]


def _histogram(coords, weight: int = 1) -> Counter:
    coords = np.asarray(coords).reshape(-1, coords.shape[-1])
    keys, counts = np.unique(coords, axis=0, return_counts=True)
    p = coords.shape[-1] + 1
    return Counter({CycInt(p, key): int(c) * weight for key, c in zip(keys, counts)})


def _pair_histogram(left, right, weight: int = 1) -> Counter:
    both = np.concatenate([left, right], axis=1)
    keys, counts = np.unique(both, axis=0, return_counts=True)
    w = left.shape[1]
    p = w + 1
    return Counter(
        {(CycInt(p, key[:w]), CycInt(p, key[w:])): int(c) * weight for key, c in zip(keys, counts)}
    )


# ---------------------------------------------------------------------------
# value distributions


@dataclass(frozen=True)
class ExpectedTSpectrum:
    p: int
    m: int
    e: int
    epsilon_imaginary: bool  # True when eta^(e)(-1) = -1, i.e. epsilon = i
    c0: CycInt
    c1: CycInt
    c2: CycInt
    frequencies: dict

    def total(self) -> int:
        return sum(self.frequencies.values())


def expected_t_spectrum(p: int, m: int, k: int) -> ExpectedTSpectrum:
    e = check_parity(m, k)
    imag = p**e % 4 == 3
    c0 = half_power(p, m, imag)
    c1 = CycInt.integer(p, p ** ((m + e) // 2))
    c2 = half_power(p, m + 2 * e, imag)
    pm, pe = p**m, p**e
    f_c0 = (pm - 1) * p ** (2 * e) * (pm - p ** (m - e) - p ** (m - 2 * e) + 1) // (2 * (pe * pe - 1))
    f_c1p = (pm - 1) * (p ** (m - e) + p ** ((m - e) // 2)) // 2
    f_c1m = (pm - 1) * (p ** (m - e) - p ** ((m - e) // 2)) // 2
    f_c2 = (pm - 1) * (p ** (m - e) - 1) // (2 * (pe * pe - 1))
    freqs = {
        CycInt.integer(p, pm): 1,
        c0: f_c0, -c0: f_c0,
        c1: f_c1p, -c1: f_c1m,
        c2: f_c2, -c2: f_c2,
    }
    return ExpectedTSpectrum(p, m, e, imag, c0, c1, c2, freqs)


def expected_joint_spectrum(p: int, m: int, k: int) -> dict:
    e = check_parity(m, k)
    if p**e % 4 != 3:
        raise PreconditionViolated(f"joint distribution needs p^e = 3 mod 4, got {p**e}")
    spectrum = expected_t_spectrum(p, m, k)
    c0, c1, c2 = spectrum.c0, spectrum.c1, spectrum.c2
    pm, pe = p**m, p**e
    f1 = (pm - 1) ** 2 * (pe - 3) // (4 * (pe - 1))
    f2 = (pm - 1) * ((pm - 1) * (pe - 1) - 4) // (4 * (pe + 1))
    f3 = (pm - 1) * (p ** (m - e) + p ** ((m - e) // 2)) // 4
    f4 = (pm - 1) * (p ** (m - e) - p ** ((m - e) // 2)) // 4
    f5 = (pm - 1) * (p ** (m - e) - 1) // (2 * (pe * pe - 1))
    rows = [
        ([(c0, c0), (-c0, -c0)], f1),
        ([(-c0, c0), (c0, -c0)], f2),
        ([(c0, c1), (c1, c0), (-c0, c1), (c1, -c0)], f3),
        ([(-c0, -c1), (-c1, -c0), (c0, -c1), (-c1, c0)], f4),
        ([(c0, c2), (c2, c0), (-c0, -c2), (-c2, -c0)], f5),
        ([(-c0, c2), (c2, -c0), (c0, -c2), (-c2, c0)], 0),
    ]
    return {pair: f for pairs, f in rows for pair in pairs}


@dataclass
class SpectrumReport:
    observed: Counter
    expected: dict
    mode: str = "naive"
    mismatches: list = dc_field(default_factory=list)

    def __post_init__(self):
        keys = sorted(set(self.observed) | set(self.expected), key=repr)
        self.mismatches = [
            (key, self.observed.get(key, 0), self.expected.get(key, 0))
            for key in keys
            if self.observed.get(key, 0) != self.expected.get(key, 0)
        ]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def raise_if_mismatch(self):
        if self.mismatches:
            key, got, want = self.mismatches[0]
            raise SpectrumMismatch(f"value {key}: observed {got}, expected {want}", (key, got, want))
        return self


def t_histogram_naive(field: Field, k: int) -> Counter:
    return _histogram(t_table(field, k))


def t_histogram_orbit(field: Field, k: int) -> Counter:
    """Full T(u, v) histogram from O(q) rows.

    For v = s^2 != 0, substituting x -> x/s gives T(u, v) = T(u / v^((p^k+1)/2), 1);
    for v = theta*s^2 the same substitution lands on T(., theta).  The map
    u -> u / v^((p^k+1)/2) permutes GF(p^m)*, so each square v contributes the
    multiset {T(u, 1) : u != 0} and each non-square v the multiset
    {T(u, theta) : u != 0}.  The axes u = 0 and v = 0 are summed directly.
    """
    e = check_parity(field.m, k)
    theta = field.fixed_nonsquare(e)
    nonzero = np.arange(1, field.q, dtype=np.int64)
    p = field.p
    hist = Counter({CycInt.integer(p, field.q): 1})
    hist.update(_histogram(t_row(field, k, 0, nonzero)))
    hist.update(_histogram(t_column(field, k, 0, nonzero)))
    half = field.n // 2
    hist.update(_histogram(t_row(field, k, 1, nonzero), half))
    hist.update(_histogram(t_row(field, k, theta, nonzero), half))
    return hist


def t_distribution(field: Field, k: int, mode: str = "naive", strict: bool = False) -> SpectrumReport:
    if mode == "naive":
        observed = t_histogram_naive(field, k)
    elif mode == "orbit":
        observed = t_histogram_orbit(field, k)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    expected = {v: f for v, f in expected_t_spectrum(field.p, field.m, k).frequencies.items() if f}
    report = SpectrumReport(observed, expected, mode)
    return report.raise_if_mismatch() if strict else report


def joint_histogram_naive(field: Field, k: int) -> Counter:
    table = t_table(field, k)
    nonzero = np.arange(1, field.q, dtype=np.int64)
    neg = field.neg_vec(nonzero)
    left = table[np.ix_(nonzero, nonzero)].reshape(-1, field.p - 1)
    right = table[np.ix_(neg, nonzero)].reshape(-1, field.p - 1)
    return _pair_histogram(left, right)


def joint_histogram_orbit(field: Field, k: int) -> Counter:
    e = check_parity(field.m, k)
    theta = field.fixed_nonsquare(e)
    nonzero = np.arange(1, field.q, dtype=np.int64)
    neg = field.neg_vec(nonzero)
    half = field.n // 2
    hist = Counter()
    for v in (1, theta):
        row = t_row(field, k, v)
        hist.update(_pair_histogram(row[nonzero], row[neg], half))
    return hist


def joint_t_distribution(field: Field, k: int, mode: str = "naive", strict: bool = False) -> SpectrumReport:
    """Histogram of (T(u, v), T(-u, v)) over u, v != 0 against its closed form."""
    expected = expected_joint_spectrum(field.p, field.m, k)
    if mode == "naive":
        observed = joint_histogram_naive(field, k)
    elif mode == "orbit":
        observed = joint_histogram_orbit(field, k)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    report = SpectrumReport(observed, {key: f for key, f in expected.items() if f}, mode)
    return report.raise_if_mismatch() if strict else report


def prop1_count(field: Field, k: int, eps: int) -> int:
    """#{u != 0 : T(u, 1) = eps * p^((m+e)/2)}."""
    e = check_parity(field.m, k)
    target = CycInt.integer(field.p, eps * field.p ** ((field.m + e) // 2))
    row = t_row(field, k, 1, np.arange(1, field.q, dtype=np.int64))
    return int(np.all(row == np.array(target.coeffs), axis=1).sum())


# ---------------------------------------------------------------------------
# counting identities for the defining sets


def _trace_of_power(field: Field, d: int):
    xs = np.arange(field.q, dtype=np.int64)
    return field.trace_vec(field.pow_vec(xs, d))


def count_na(field: Field, k: int, d: int, a: int, mode: str = "count") -> int:
    """n_a = #{x in GF(p^m) : Tr(x^d) = a}."""
    p, m = field.p, field.m
    if mode == "count":
        return int(np.count_nonzero(_trace_of_power(field, d) == a % p))
    if mode != "formula":
        raise ValueError(f"unknown mode {mode!r}")
    e = check_parity(m, k)
    cls = classify_d(d, p, e)
    if cls is ResidueClass.ONE or p**e % 4 == 1 or a % p == 0:
        return p ** (m - 1)
    sign = -1 if ((m - 1) // 2) % 2 else 1
    return p ** (m - 1) + sign * p ** ((m - 1) // 2) * legendre(a, p)


def _collapse(value: CycInt, divisor: int, what: str) -> int:
    if not value.is_rational():
        raise NonIntegerCollapse(f"{what}: {value!r} is not a rational integer")
    out = value.exact_div(divisor)
    if out is None:
        raise NonIntegerCollapse(f"{what}: {value.to_int()} is not divisible by {divisor}")
    return out.to_int()


def count_nab(field: Field, k: int, d: int, a: int, b: int, mode: str = "count") -> int:
    """N(a, b) = #{x : Tr(x^d) = a and Tr(b x) = 0}, b != 0."""
    if b == 0:
        raise ZeroB("N(a, b) needs b != 0")
    p, m = field.p, field.m
    a %= p
    if mode == "count":
        xs = np.arange(field.q, dtype=np.int64)
        hit = (_trace_of_power(field, d) == a) & (field.trace_vec(field.mul_vec(b, xs)) == 0)
        return int(np.count_nonzero(hit))
    if mode != "formula":
        raise ValueError(f"unknown mode {mode!r}")
    e = check_parity(m, k)
    cls = classify_d(d, p, e)
    n_a = count_na(field, k, d, a, "formula")
    nonzero_p = range(1, p)
    if cls is ResidueClass.ONE_PLUS_HALF and p**e % 4 == 3 and a != 0:
        acc = CycInt.integer(p, p * n_a)
        for y in nonzero_p:
            inner = sum((t_sum(field, field.mul(field.mul(y, z), b), y, k) for z in nonzero_p),
                        CycInt.zero(p))
            acc = acc + CycInt.omega(p, -y * a) * inner
        return _collapse(acc, p * p, "N(a,b)")
    theta = field.fixed_nonsquare(e)
    pair_sum = CycInt.zero(p)
    for z in nonzero_p:
        zb = field.mul(z, b)
        pair_sum = pair_sum + t_sum(field, zb, 1, k) + t_sum(field, field.mul(theta, zb), theta, k)
    char = sum((CycInt.omega(p, -a * y) for y in nonzero_p), CycInt.zero(p))
    acc = CycInt.integer(p, 2 * p**m) + pair_sum * char
    return _collapse(acc, 2 * p * p, "N(a,b)")


def aux_sums(field: Field, d: int, a: int, b: int) -> tuple[CycInt, CycInt]:
    """(S(a), R(a, b)) by direct summation.

    S(a) = sum_{y != 0} sum_x w^(y(Tr(x^d) - a))
    R(a, b) = sum_{y != 0} w^(-ya) sum_{z != 0} sum_x w^Tr(y x^d + z b x)
    """
    if b == 0:
        raise ZeroB("R(a, b) needs b != 0")
    p = field.p
    xs = np.arange(field.q, dtype=np.int64)
    t = _trace_of_power(field, d)
    s = field.trace_vec(field.mul_vec(b, xs))
    S = CycInt.zero(p)
    R = CycInt.zero(p)
    for y in range(1, p):
        S = S + char_sum(field, y * (t - a))
        for z in range(1, p):
            R = R + char_sum(field, y * t + z * s - y * a)
    return S, R
