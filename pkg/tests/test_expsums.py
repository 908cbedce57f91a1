import math

import numpy as np
import pytest

from monomial_codes.cyclotomic import CycInt
from monomial_codes.errors import BudgetExceeded, PreconditionViolated, SpectrumMismatch, ZeroB, ZeroForm
from monomial_codes.expsums import (
    aux_sums,
    char_sum,
    count_na,
    count_nab,
    expected_joint_spectrum,
    expected_t_spectrum,
    gauss_sum_brute,
    gauss_sum_closed,
    joint_t_distribution,
    form_sum_value,
    prime_gauss_sum,
    prop1_count,
    quad_diag,
    quad_eval,
    quad_eval_vec,
    quad_rank,
    quad_rank_table,
    radical_rank,
    t_column,
    t_row,
    t_sum,
    t_table,
    t_distribution,
    t_values,
)
from monomial_codes.field import build_field


def direct_t(field, u, v, k):
    """T(u, v) straight from the definition, one character per element."""
    xs = np.arange(field.q)
    y = field.add_vec(field.mul_vec(u, field.pow_vec(xs, field.p**k + 1)), field.mul_vec(v, field.pow_vec(xs, 2)))
    return char_sum(field, field.trace_vec(y))


# -- Gauss sums ------------------------------------------------------------

def test_prime_gauss_sum_squares():
    for p in (3, 5, 7, 11, 13):
        g = prime_gauss_sum(p)
        assert g * g == (p if p % 4 == 1 else -p)


@pytest.mark.parametrize("p,t", [(3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (5, 3), (5, 4), (7, 1), (7, 2), (7, 3), (7, 4)])
def test_gauss_brute_equals_closed(p, t):
    assert gauss_sum_brute(build_field(p, t), t) == gauss_sum_closed(p, t)


def test_gauss_examples():
    assert gauss_sum_closed(3, 1) == CycInt(3, [1, 2])
    assert gauss_sum_closed(3, 3).coeffs == (-3, -6)
    # (-1)^(t-1) i^t p^(t/2) at t = 2 is +3
    assert gauss_sum_closed(3, 2) == 3
    g5 = gauss_sum_closed(5, 1)
    assert g5 * g5 == 5
    assert abs(complex(g5) - math.sqrt(5)) < 1e-9


def test_gauss_brute_on_subfield(f36):
    assert gauss_sum_brute(f36, 2) == gauss_sum_closed(3, 2)
    assert gauss_sum_brute(f36, 3) == gauss_sum_closed(3, 3)


def test_char_sum_examples(f35):
    xs = np.arange(f35.q)
    assert char_sum(f35, np.zeros(f35.q, dtype=np.int64)) == 243
    assert char_sum(f35, f35.trace_vec(f35.mul_vec(17, xs))) == 0
    quad = char_sum(f35, f35.trace_vec(f35.pow_vec(xs, 2)))
    assert quad == gauss_sum_closed(3, 5)


# -- quadratic forms -------------------------------------------------------

def test_quad_eval_examples(f35):
    assert quad_eval(f35, 5, 7, 2, 0) == 0
    assert quad_eval(build_field(3, 5), 1, 0, 3, f35.alpha) != 0


def test_quad_eval_homogeneous_exhaustive(f35):
    xs = np.arange(f35.q)
    for u, v in [(1, 0), (0, 1), (17, 200), (242, 5)]:
        qx = quad_eval_vec(f35, u, v, 2, xs)
        for lam in (1, 2):
            assert np.array_equal(quad_eval_vec(f35, u, v, 2, f35.mul_vec(lam, xs)), qx * lam * lam % 3)


def test_quad_eval_vec_matches_scalar(f36):
    xs = np.arange(0, f36.q, 11)
    assert quad_eval_vec(f36, 5, 9, 2, xs).tolist() == [quad_eval(f36, 5, 9, 2, int(x)) for x in xs]


@pytest.mark.parametrize("m,k", [(5, 1), (5, 2), (6, 2), (9, 3)])
def test_axis_forms_have_full_rank(m, k):
    f = build_field(3, m)
    h = m // math.gcd(m, k)
    assert quad_rank(f, 0, 1, k).rank == h
    assert quad_rank(f, 1, 0, k).rank == h
    assert quad_rank(f, 0, f.alpha, k).rank == h


def test_zero_form_rejected(f35):
    with pytest.raises(ZeroForm):
        quad_rank(f35, 0, 0, 2)
    with pytest.raises(ZeroForm):
        radical_rank(f35, 0, 0, 2)


@pytest.mark.parametrize("m,k", [(5, 2), (6, 2), (6, 4)])
def test_kernel_rank_equals_radical_rank(m, k):
    f = build_field(3, m)
    rng = np.random.default_rng(m + k)
    for u, v in rng.integers(0, f.q, size=(120, 2)):
        u, v = int(u), int(v)
        if u or v:
            assert quad_rank(f, u, v, k).rank == radical_rank(f, u, v, k)


def test_radical_budget(f39):
    with pytest.raises(BudgetExceeded):
        radical_rank(f39, 1, 1, 3)


def test_rank_table_matches_scalar_ranks(f35):
    table = quad_rank_table(f35, 1)
    rng = np.random.default_rng(5)
    for u, v in rng.integers(0, f35.q, size=(200, 2)):
        if u or v:
            assert table[u, v] == quad_rank(f35, int(u), int(v), 1).rank
    assert table[0, 0] == 0
    assert set(np.unique(table[1:, :])) <= {3, 4, 5}
    with pytest.raises(PreconditionViolated):
        quad_rank_table(build_field(3, 6), 2)


@pytest.mark.parametrize("m,k,count", [(5, 1, 200), (5, 2, 200), (6, 2, 120), (9, 3, 40)])
def test_form_sum_value_equals_t(m, k, count):
    f = build_field(3, m)
    rng = np.random.default_rng(m * k)
    for u, v in rng.integers(0, f.q, size=(count, 2)):
        u, v = int(u), int(v)
        if u or v:
            d = quad_diag(f, u, v, k)
            assert d.rank == len(d.diagonal) == quad_rank(f, u, v, k).rank
            assert d.form_sum_value == t_sum(f, u, v, k)


def test_form_sum_value_axis(f35):
    # Q_{0,1} with k = 1 against a direct character sum
    assert quad_diag(f35, 0, 1, 1).form_sum_value == direct_t(f35, 0, 1, 1)


def test_discriminant_stable_under_square_scaling(f36):
    # scaling (u, v) by mu multiplies every diagonal entry by mu, so a square mu keeps the class
    lam = f36.exp(91)  # generates GF(9)^*
    mu = f36.mul(lam, lam)
    for u, v in [(7, 11), (1, 0), (300, 5)]:
        form = quad_rank(f36, u, v, 2)
        scaled = quad_rank(f36, f36.mul(mu, u), f36.mul(mu, v), 2)
        assert (scaled.rank, scaled.disc_class) == (form.rank, form.disc_class)


def test_form_sum_value_p5():
    f = build_field(5, 3)
    for u, v in [(0, 1), (3, 7), (11, 0), (100, 41)]:
        assert quad_diag(f, u, v, 1).form_sum_value == t_sum(f, u, v, 1)
    assert form_sum_value(5, 3, 1, 3, 1) * form_sum_value(5, 3, 1, 3, 1) == 5**3


# -- T(u, v) ---------------------------------------------------------------

def test_t_zero_zero(f35):
    assert t_sum(f35, 0, 0, 2) == 243


@pytest.mark.parametrize("p,m,k", [(3, 5, 2), (3, 6, 2), (5, 3, 1), (7, 3, 1)])
def test_t_values_match_definition(p, m, k):
    f = build_field(p, m)
    rng = np.random.default_rng(p + m)
    pairs = rng.integers(0, f.q, size=(25, 2))
    got = t_values(f, k, pairs[:, 0], pairs[:, 1])
    for (u, v), coords in zip(pairs, got):
        assert CycInt(p, coords) == direct_t(f, int(u), int(v), k)


def test_rows_columns_and_table_agree(f35):
    table = t_table(f35, 2)
    assert np.array_equal(t_row(f35, 2, 7), table[:, 7])
    assert np.array_equal(t_column(f35, 2, 19), table[19, :])
    assert np.array_equal(t_row(f35, 2, 7, [3, 4]), table[[3, 4], 7])


def test_t_table_budget(f39):
    with pytest.raises(BudgetExceeded):
        t_table(f39, 3)


def test_t_alpha_one_in_spectrum(f35):
    spectrum = expected_t_spectrum(3, 5, 2)
    assert t_sum(f35, f35.alpha, 1, 2) in spectrum.frequencies


def test_scaling_law_sample(f39):
    # lambda in GF(27)^*, e = 3
    rng = np.random.default_rng(1)
    sub = f39.subfield_elements(3)
    for u, v in rng.integers(1, f39.q, size=(30, 2)):
        u, v = int(u), int(v)
        r = quad_rank(f39, u, v, 3).rank
        lam = sub[int(rng.integers(len(sub)))]
        lhs = t_sum(f39, f39.mul(lam, u), f39.mul(lam, v), 3)
        assert lhs == t_sum(f39, u, v, 3).scale(f39.quad_char(f39.pow(lam, r), 3))


def test_nonsquare_pairing(f35):
    # lambda = 2 is a non-square of GF(3); odd rank gives T + T(2u, 2v) = 0
    table = t_table(f35, 2)
    ranks = quad_rank_table(f35, 2)
    xs = np.arange(f35.q)
    twice = f35.mul_vec(2, xs)
    pair = table + table[np.ix_(twice, twice)]
    odd = ranks % 2 == 1
    assert not pair[odd].any()
    even = (ranks % 2 == 0) & (ranks > 0)
    for u, v in zip(*np.nonzero(even)):
        total = CycInt(3, pair[u, v])
        assert total.is_rational()
        assert abs(total.to_int()) == 2 * 3 ** (5 - ranks[u, v] // 2)


# -- spectra ---------------------------------------------------------------

def test_expected_spectrum_frequencies():
    spectrum = expected_t_spectrum(3, 5, 2)
    c0 = CycInt(3, [9, 18])
    assert spectrum.c0 == c0
    f_c0 = 242 * 9 * (243 - 81 - 27 + 1) // (2 * 8)
    assert spectrum.frequencies[c0] == spectrum.frequencies[-c0] == f_c0
    assert spectrum.frequencies[CycInt.integer(3, 27)] == 242 * (81 + 9) // 2 == 10890
    for m, k in [(5, 1), (5, 2), (6, 2), (7, 1), (9, 3), (9, 1)]:
        assert expected_t_spectrum(3, m, k).total() == 3 ** (2 * m)


@pytest.mark.parametrize("p,m,k", [(3, 5, 1), (3, 5, 2), (3, 6, 2), (5, 3, 1), (7, 3, 1), (3, 3, 1)])
def test_naive_and_orbit_spectra(p, m, k):
    f = build_field(p, m)
    naive = t_distribution(f, k, "naive", strict=True)
    orbit = t_distribution(f, k, "orbit", strict=True)
    assert naive.observed == orbit.observed


def test_spectrum_mismatch_is_reported(f35):
    report = t_distribution(f35, 2)
    report.expected = dict(report.expected)
    key = next(iter(report.expected))
    report.expected[key] += 1
    report.__post_init__()
    assert not report.ok
    with pytest.raises(SpectrumMismatch) as info:
        report.raise_if_mismatch()
    assert info.value.offending[0] == key


def test_joint_spectrum_rows():
    exp = expected_joint_spectrum(3, 5, 2)
    c0 = expected_t_spectrum(3, 5, 2).c0
    c2 = expected_t_spectrum(3, 5, 2).c2
    assert exp[(c0, c0)] == 0
    assert exp[(-c0, c2)] == 0
    for m, k in [(5, 1), (5, 2), (7, 1), (9, 3)]:
        assert sum(expected_joint_spectrum(3, m, k).values()) == (3**m - 1) ** 2
    with pytest.raises(PreconditionViolated):
        expected_joint_spectrum(3, 6, 2)


@pytest.mark.parametrize("p,m,k", [(3, 5, 1), (3, 5, 2), (7, 3, 1), (3, 3, 1)])
def test_joint_naive_and_orbit(p, m, k):
    f = build_field(p, m)
    naive = joint_t_distribution(f, k, "naive", strict=True)
    orbit = joint_t_distribution(f, k, "orbit", strict=True)
    assert naive.observed == orbit.observed


# -- counting identities --------------------------------------------------

def test_count_na_examples(f35):
    assert count_na(f35, 2, 218, 1) == count_na(f35, 2, 218, 1, "formula") == 90
    assert count_na(f35, 2, 218, 2) == count_na(f35, 2, 218, 2, "formula") == 72
    for d in (97, 218):
        assert sum(count_na(f35, 2, d, a) for a in range(3)) == 243


def test_count_nab_examples(f35, f39):
    a = f35.alpha
    assert count_nab(f35, 2, 97, 0, a) == count_nab(f35, 2, 97, 0, a, "formula")
    assert count_nab(f39, 3, 10544, 1, f39.alpha) == count_nab(f39, 3, 10544, 1, f39.alpha, "formula")
    for b in (1, 50, 242):
        assert sum(count_nab(f35, 2, 218, a, b) for a in range(3)) == 81
    with pytest.raises(ZeroB):
        count_nab(f35, 2, 97, 0, 0)


def test_counting_p5():
    f = build_field(5, 3)
    for sol in (21, 83):
        for a in range(5):
            assert count_na(f, 1, sol, a) == count_na(f, 1, sol, a, "formula")
            for b in (1, 7, 100):
                assert count_nab(f, 1, sol, a, b) == count_nab(f, 1, sol, a, b, "formula")


def test_aux_sums(f35):
    for d in (97, 218):
        for a in range(3):
            n_a = count_na(f35, 2, d, a)
            for b in (1, 2, 40, 241):
                S, R = aux_sums(f35, d, a, b)
                assert S == 3 * n_a - 243
                assert R.is_rational()
                assert 9 * count_nab(f35, 2, d, a, b) == 9 * 27 + S.to_int() + R.to_int()
    S0, _ = aux_sums(f35, 97, 0, 1)
    assert S0 == 0
    with pytest.raises(ZeroB):
        aux_sums(f35, 97, 0, 0)


def test_prop1_counts(f35):
    assert prop1_count(f35, 2, 1) == 45
    assert prop1_count(f35, 2, -1) == 36
