"""Batteries of end-to-end checks behind ``monomial-codes suite``.

``quick`` stays at m <= 6 and finishes in seconds; ``full`` adds the m = 7 and
m = 9 runs.  Each check returns ``(ok, detail)`` and never raises on a
mismatch, so one failure does not hide the rest.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .codes import build_code, verify
from .exponents import apn_catalog, differential_uniformity, satisfies_congruence, solve_d
from .expsums import (
    count_na,
    count_nab,
    expected_joint_spectrum,
    gauss_sum_brute,
    gauss_sum_closed,
    joint_t_distribution,
    prop1_count,
    t_distribution,
)
from .field import MAX_FIELD_SIZE, build_field


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str
    seconds: float

    def to_dict(self) -> dict:
        # timing is left out so that reports stay byte-identical across runs
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


def _check_solve(p, m, k, want):
    got = [s.d for s in solve_d(p, m, k)]
    return got == want, f"solutions {got}"


def _check_gauss():
    bad = []
    for p in (3, 5, 7):
        for t in (1, 2, 3, 4):
            if p**t > MAX_FIELD_SIZE:
                continue
            field = build_field(p, t)
            if gauss_sum_brute(field, t) != gauss_sum_closed(p, t):
                bad.append((p, t))
    return not bad, "all agree" if not bad else f"disagree at {bad}"


def _check_code(m, k, d, a, jobs=1):
    report = verify(build_code(build_field(3, m), k, d, a), jobs=jobs)
    detail = f"{report.branch} {report.observed.enumerator()}"
    if report.verdict == "FAIL":
        name, why = report.first_failure
        detail += f" | {name}: {why}"
    return report.verdict == "PASS", detail


def _check_spectrum(p, m, k, mode):
    report = t_distribution(build_field(p, m), k, mode)
    return report.ok, f"{mode}: {len(report.observed)} values" if report.ok else f"{mode}: {report.mismatches[0]}"


def _check_modes_agree(p, m, k):
    field = build_field(p, m)
    naive = t_distribution(field, k, "naive").observed
    orbit = t_distribution(field, k, "orbit").observed
    return naive == orbit, "naive = orbit" if naive == orbit else "naive and orbit differ"


def _check_joint(p, m, k, mode):
    report = joint_t_distribution(build_field(p, m), k, mode)
    zero_rows = [key for key, f in expected_joint_spectrum(p, m, k).items() if f == 0]
    stray = [key for key in zero_rows if report.observed.get(key, 0)]
    ok = report.ok and not stray
    if ok:
        return True, f"{mode}: {len(report.observed)} pairs, {len(zero_rows)} empty rows empty"
    return False, f"{mode}: {report.mismatches[:1] or stray[:1]}"


def _check_counting(p, m, k, sample=None, seed=0):
    field = build_field(p, m)
    bs = np.arange(1, field.q)
    if sample is not None:
        bs = np.random.default_rng(seed).choice(bs, size=sample, replace=False)
    for sol in solve_d(p, m, k):
        for a in range(p):
            if count_na(field, k, sol.d, a) != count_na(field, k, sol.d, a, "formula"):
                return False, f"n_a differs at d={sol.d}, a={a}"
            for b in bs:
                b = int(b)
                if count_nab(field, k, sol.d, a, b) != count_nab(field, k, sol.d, a, b, "formula"):
                    return False, f"N(a,b) differs at d={sol.d}, a={a}, b={b}"
    e = math.gcd(m, k)
    for eps in (1, -1):
        want = (p ** (m - e) + eps * p ** ((m - e) // 2)) // 2
        if prop1_count(field, k, eps) != want:
            return False, f"count of T(u,1) = eps p^((m+e)/2) for eps={eps} differs"
    return True, f"{len(bs)} values of b, both exponents"


def _check_apn(m):
    field = build_field(3, m)
    for entry in apn_catalog(m):
        if not satisfies_congruence(3, m, entry.k, entry.d):
            return False, f"d={entry.d} fails the congruence with k={entry.k}"
        du = differential_uniformity(field, entry.d)
        if du != 2:
            return False, f"d={entry.d} has differential uniformity {du}"
        ok, detail = _check_code(m, entry.k, entry.d, 0)
        if not ok:
            return False, f"d={entry.d}: {detail}"
    return True, ", ".join(f"({e.family}) d={e.d} k={e.k}" for e in apn_catalog(m))


def quick_checks(jobs: int = 1):
    return [
        ("solve_d (3,5,2)", lambda: _check_solve(3, 5, 2, [97, 218])),
        ("solve_d (3,6,2)", lambda: _check_solve(3, 6, 2, [73, 437])),
        ("solve_d (3,9,3)", lambda: _check_solve(3, 9, 3, [703, 10544])),
        ("gauss sums p<=7, t<=4", _check_gauss),
        ("code (5,2,97,0)", lambda: _check_code(5, 2, 97, 0, jobs)),
        ("code (5,2,218,0)", lambda: _check_code(5, 2, 218, 0, jobs)),
        ("code (5,1) a=0", lambda: _check_code(5, 1, solve_d(3, 5, 1)[0].d, 0, jobs)),
        ("code (6,2,73,1)", lambda: _check_code(6, 2, 73, 1, jobs)),
        ("code (6,2,73,2)", lambda: _check_code(6, 2, 73, 2, jobs)),
        ("code (6,2,437,1)", lambda: _check_code(6, 2, 437, 1, jobs)),
        ("code (6,2,437,2)", lambda: _check_code(6, 2, 437, 2, jobs)),
        ("T spectrum (3,5,1)", lambda: _check_spectrum(3, 5, 1, "naive")),
        ("T spectrum (3,5,2)", lambda: _check_spectrum(3, 5, 2, "naive")),
        ("T spectrum (3,6,2)", lambda: _check_spectrum(3, 6, 2, "naive")),
        ("naive = orbit (3,5,2)", lambda: _check_modes_agree(3, 5, 2)),
        ("naive = orbit (3,6,2)", lambda: _check_modes_agree(3, 6, 2)),
        ("joint spectrum (3,5,2)", lambda: _check_joint(3, 5, 2, "naive")),
        ("counting identities (3,5,2)", lambda: _check_counting(3, 5, 2)),
        ("APN battery m=5", lambda: _check_apn(5)),
    ]


def full_checks(jobs: int = 1):
    d703, d10544 = (s.d for s in solve_d(3, 9, 3))
    return quick_checks(jobs) + [
        ("code (7,1) a=0", lambda: _check_code(7, 1, solve_d(3, 7, 1)[0].d, 0, jobs)),
        ("code (9,3,703,0)", lambda: _check_code(9, 3, d703, 0, jobs)),
        ("code (9,3,703,1)", lambda: _check_code(9, 3, d703, 1, jobs)),
        ("code (9,3,703,2)", lambda: _check_code(9, 3, d703, 2, jobs)),
        ("code (9,3,10544,1)", lambda: _check_code(9, 3, d10544, 1, jobs)),
        ("code (9,3,10544,2)", lambda: _check_code(9, 3, d10544, 2, jobs)),
        ("T spectrum (3,9,3)", lambda: _check_spectrum(3, 9, 3, "orbit")),
        ("joint spectrum (3,9,3)", lambda: _check_joint(3, 9, 3, "orbit")),
        ("counting identities (3,9,3)", lambda: _check_counting(3, 9, 3, sample=100)),
        ("APN battery m=7", lambda: _check_apn(7)),
    ]


def run_suite(level: str = "quick", jobs: int = 1) -> list[CheckResult]:
    if level not in ("quick", "full"):
        raise ValueError(f"unknown level {level!r}")
    checks = quick_checks(jobs) if level == "quick" else full_checks(jobs)
    results = []
    for name, fn in checks:
        start = time.perf_counter()
        ok, detail = fn()
        results.append(CheckResult(name, bool(ok), detail, time.perf_counter() - start))
    return results
