"""Trace codes C_D(a) with defining set D(a) = {x != 0 : Tr(x^d) = a}.

The codeword attached to a message b has components Tr(beta_i b) for the
elements beta_i of D(a), taken in ascending discrete-log order.  Weights are
counted by direct scan, two table reads per component, which keeps the
brute-force route independent of the character-sum formulas in
:mod:`monomial_codes.expsums`.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import BudgetExceeded, EmptyDefiningSet, Mismatch, UnsupportedBranch
from .expsums import legendre
from .exponents import ResidueClass, classify_d, validate_exponent
from .field import Field

WEIGHT_SCAN_CAP = 3**10


@dataclass(frozen=True, eq=False)
class CodeInstance:
    field: Field
    k: int
    d: int
    a: int
    e: int
    defining_logs: np.ndarray  # discrete logs of beta_1 .. beta_l, ascending

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def m(self) -> int:
        return self.field.m

    @property
    def length(self) -> int:
        return len(self.defining_logs)

    @property
    def claimed_dimension(self) -> int:
        return self.field.m

    @property
    def defining_set(self) -> np.ndarray:
        return self.field.exp_table[self.defining_logs]

    @property
    def params(self) -> dict:
        return {"p": self.p, "m": self.m, "k": self.k, "d": self.d, "a": self.a, "e": self.e}


def build_code(field: Field, k: int, d: int, a: int) -> CodeInstance:
    e = validate_exponent(field.p, field.m, k, d)
    a %= field.p
    logs = np.arange(field.n, dtype=np.int64)
    traces = field.trace_log[(logs * (d % field.n)) % field.n]
    chosen = logs[traces == a]
    if len(chosen) == 0:
        raise EmptyDefiningSet(f"D({a}) is empty for d={d}")
    chosen.flags.writeable = False
    return CodeInstance(field, k, d, a, e, chosen)


def codeword(code: CodeInstance, b: int) -> np.ndarray:
    f = code.field
    if b == 0:
        return np.zeros(code.length, dtype=np.int64)
    return f.trace_log2[code.defining_logs + f.log(b)].astype(np.int64)


def _weights_for(field: Field, logs: np.ndarray, b_logs: np.ndarray) -> np.ndarray:
    step = max(1, (1 << 22) // max(1, len(logs)))
    out = np.empty(len(b_logs), dtype=np.int64)
    for s in range(0, len(b_logs), step):
        block = field.trace_log2[b_logs[s:s + step, None] + logs[None, :]]
        out[s:s + step] = np.count_nonzero(block, axis=1)
    return out


def codeword_weights(code: CodeInstance, order: str = "ascending", jobs: int = 1) -> np.ndarray:
    """Hamming weight of the codeword of alpha^j, for j = 0 .. p^m - 2."""
    f = code.field
    if f.q > WEIGHT_SCAN_CAP:
        raise BudgetExceeded(f"weight scan capped at 3^10 messages, got {f.q}")
    logs = code.defining_logs if order == "ascending" else code.defining_logs[::-1].copy()
    b_logs = np.arange(f.n, dtype=np.int64)
    if jobs <= 1:
        return _weights_for(f, logs, b_logs)
    parts = np.array_split(b_logs, jobs)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        chunks = list(pool.map(lambda part: _weights_for(f, logs, part), parts))
    return np.concatenate(chunks)


@dataclass
class WeightDist:
    entries: dict  # weight -> frequency, zero codeword included
    source: str  # "brute-force", "T1", "T2i" or "T2ii"
    length: int | None = None
    dimension: int | None = None
    min_distance: int | None = None
    possible_weights: frozenset | None = None  # T2ii only; frequencies are unknown

    def items(self):
        return sorted(self.entries.items())

    def nonzero_weights(self) -> list[int]:
        return sorted(w for w in self.entries if w)

    def total(self) -> int:
        return sum(self.entries.values())

    def enumerator(self) -> str:
        """Polynomial string, ascending weight: ``1+90x^48+80x^54+72x^60``."""
        terms = []
        for w, f in self.items():
            terms.append(str(f) if w == 0 else f"{f}x^{w}")
        return "+".join(terms)

    def as_pairs(self) -> list[list[int]]:
        return [[w, f] for w, f in self.items()]


def weight_distribution(code: CodeInstance, order: str = "ascending", jobs: int = 1) -> WeightDist:
    weights = codeword_weights(code, order, jobs)
    values, counts = np.unique(weights, return_counts=True)
    entries = {int(w): int(c) for w, c in zip(values, counts)}
    entries[0] = entries.get(0, 0) + 1
    # the message map is linear, so its kernel is {b : wt(c_b) = 0}
    kernel = entries[0]
    dim = code.m - round(math.log(kernel, code.p))
    nonzero = [w for w in entries if w]
    return WeightDist(
        entries, "brute-force", code.length, dim, min(nonzero) if nonzero else 0
    )


def closed_form_branch(p: int, m: int, k: int, d: int, a: int) -> str:
    if p != 3:
        raise UnsupportedBranch(f"closed forms are ternary only, got p={p}")
    e = validate_exponent(p, m, k, d)
    if a % 3 == 0:
        return "T1"
    if e % 2 == 0 or classify_d(d, p, e) is ResidueClass.ONE:
        return "T2i"
    return "T2ii"


def possible_weights_t2ii(m: int, e: int, a: int) -> frozenset:
    sign = -1 if ((m - 1) // 2) % 2 else 1
    base = 2 * (3 ** (m - 2) + sign * 3 ** ((m - 3) // 2) * legendre(a, 3))
    r = 3 ** ((m - 3) // 2)
    offsets = [
        0,
        2 * r,
        r - 3 ** ((m + e - 4) // 2),
        r + 3 ** ((m + e - 4) // 2),
        r + 3 ** ((m + 2 * e - 3) // 2),
    ]
    return frozenset(base + s * off for off in offsets for s in (1, -1))


def expected_distribution(p: int, m: int, k: int, d: int, a: int) -> WeightDist:
    branch = closed_form_branch(p, m, k, d, a)
    e = validate_exponent(p, m, k, d)
    big = 3 ** (m - e)
    small = 3 ** ((m - e) // 2)
    mid = 2 * 3 ** (m - 2)
    shift = 3 ** ((m + e) // 2 - 2)
    if branch == "T1":
        entries = {
            0: 1,
            2 * (3 ** (m - 2) - shift): big + small,
            2 * (3 ** (m - 2) + shift): big - small,
            mid: 3**m - 1 - 2 * big,
        }
        return WeightDist(entries, branch, 3 ** (m - 1) - 1, m)
    if branch == "T2i":
        entries = {
            0: 1,
            mid - shift: big - small,
            mid + shift: big + small,
            mid: 3**m - 1 - 2 * big,
        }
        return WeightDist(entries, branch, 3 ** (m - 1), m)
    sign = -1 if ((m - 1) // 2) % 2 else 1
    length = 3 ** (m - 1) + sign * 3 ** ((m - 1) // 2) * legendre(a, 3)
    return WeightDist({0: 1}, branch, length, m, possible_weights=possible_weights_t2ii(m, e, a))


@dataclass
class VerificationReport:
    params: dict
    branch: str
    observed: WeightDist
    expected: WeightDist
    checks: list = dc_field(default_factory=list)  # (name, ok, detail)

    @property
    def verdict(self) -> str:
        return "PASS" if all(ok for _, ok, _ in self.checks) else "FAIL"

    @property
    def first_failure(self):
        return next(((name, detail) for name, ok, detail in self.checks if not ok), None)

    def raise_if_failed(self):
        if self.verdict == "FAIL":
            name, detail = self.first_failure
            raise Mismatch(f"{name}: {detail}", (name, detail))
        return self

    def to_dict(self) -> dict:
        obs, exp = self.observed, self.expected
        expected = {"length": exp.length, "dimension": exp.dimension}
        if exp.possible_weights is not None:
            expected["possible_weights"] = sorted(exp.possible_weights)
            expected["observed_possible_weights"] = obs.nonzero_weights()
        else:
            expected["enumerator"] = exp.as_pairs()
        out = {
            "params": self.params,
            "length": obs.length,
            "dimension": obs.dimension,
            "min_distance": obs.min_distance,
            "enumerator": obs.as_pairs(),
            "expected": expected,
            "verdict": self.verdict,
            "branch": self.branch,
        }
        if self.verdict == "FAIL":
            name, detail = self.first_failure
            out["first_mismatch"] = {"check": name, "detail": detail}
        return out


def _first_difference(observed: dict, expected: dict):
    for w in sorted(set(observed) | set(expected)):
        if observed.get(w, 0) != expected.get(w, 0):
            return w, observed.get(w, 0), expected.get(w, 0)
    return None


def verify(code: CodeInstance, jobs: int = 1) -> VerificationReport:
    """Compare the brute-force distribution of ``code`` with the matching closed form."""
    expected = expected_distribution(code.p, code.m, code.k, code.d, code.a)
    observed = weight_distribution(code, jobs=jobs)
    report = VerificationReport(code.params, expected.source, observed, expected)
    checks = report.checks
    checks.append(("length", observed.length == expected.length,
                   f"observed {observed.length}, expected {expected.length}"))
    checks.append(("dimension", observed.dimension == expected.dimension,
                   f"observed {observed.dimension}, expected {expected.dimension}"))
    if expected.possible_weights is None:
        diff = _first_difference(observed.entries, expected.entries)
        detail = "equal" if diff is None else "weight {}: observed {}, expected {}".format(*diff)
        checks.append(("enumerator", diff is None, detail))
    else:
        stray = sorted(set(observed.nonzero_weights()) - expected.possible_weights)
        checks.append(("possible-weights", not stray,
                       "all observed weights allowed" if not stray else f"unexpected weights {stray}"))
    return report
