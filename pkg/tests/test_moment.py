"""First-moment pipeline, constant A, and the empirical ratio reporters."""

import math

import pytest

from quartic_hecke.gaussian import GaussianInt as G, ONE, is_squarefree
from quartic_hecke.moment import (
    _ideal_sum_euler,
    _is_fourth_power,
    _prime_cutoff,
    conductor_norm_limit,
    conductors,
    constant_A,
    first_moment,
    ideal_sum_direct,
    pv_ratio_report,
    sieve_ratio_report,
    sigma_split,
)

# frozen on first full run; cross-checked at (x=10, tol=1e-10), diff 1.1e-16
MOMENT_Y100_TOTAL = -0.39363814798507824


def test_conductor_list():
    cs = conductors(40.0)
    assert cs[0] == ONE
    assert all(c.re % 16 == 1 and c.im % 16 == 0 for c in cs)
    assert all(is_squarefree(c) for c in cs)
    assert all(c.norm() <= conductor_norm_limit(40.0, 1e-12) for c in cs)
    assert ONE not in conductors(40.0, include_one=False)


def test_constant_A_breakdown():
    cb = constant_A(1e-8)
    assert cb.geometric == 2.0 + math.sqrt(2.0)
    assert cb.residue == pytest.approx(math.pi / 4.0, abs=1e-15)
    assert cb.class_number == 32
    assert cb.zeta2 == pytest.approx(1.5067030099, abs=1e-8)
    assert cb.A == pytest.approx(
        cb.geometric * cb.residue / (cb.class_number * cb.zeta2) * cb.ideal_sum,
        rel=1e-14)
    assert cb.A > 0


def test_ideal_sum_euler_vs_direct_series():
    cb = constant_A(1e-8)
    for T in (500, 1000, 2000, 4000):
        direct = ideal_sum_direct(T)
        assert abs(cb.ideal_sum - direct) <= (math.pi / 4.0) / T
    # direct series approaches the Euler value from below as T doubles
    diffs = [abs(cb.ideal_sum - ideal_sum_direct(T)) for T in (500, 1000, 2000)]
    assert diffs[0] > diffs[1] > diffs[2]


def test_ideal_sum_euler_truncation_stable():
    p = _prime_cutoff(1e-8)
    v1 = _ideal_sum_euler(p)
    v2 = _ideal_sum_euler(2 * p)
    assert abs(v1 - v2) <= 1e-8


def test_first_moment_regression_y100():
    rep = first_moment(100.0, tol=1e-8, threads=1)
    assert rep.total.real == pytest.approx(MOMENT_Y100_TOTAL, abs=1e-10)
    assert abs(rep.total.imag) < 1e-12
    # second (x, tol) setting agrees
    rep2 = first_moment(100.0, x=10.0, tol=1e-10, threads=1)
    assert abs(rep.total - rep2.total) < 1e-12


def test_first_moment_split_and_rows():
    rep = first_moment(60.0, tol=1e-8, threads=1)
    assert rep.sigma1 + rep.sigma2 == rep.total
    s1, s2 = sigma_split(60.0, tol=1e-8, threads=1)
    assert s1 == rep.sigma1 and s2 == rep.sigma2
    # rows recompute the totals
    t1 = sum(row.s1 * row.weight for row in rep.rows)
    t2 = sum(row.s2 * row.weight for row in rep.rows)
    assert abs((t1 + t2) - rep.total) <= 1e-12 * max(1.0, abs(rep.total))
    for row in rep.rows:
        assert row.weight == math.exp(-row.norm / rep.y)
        assert row.l_value == row.s1 + row.s2
    assert rep.main_term == rep.constant.A * rep.y


def test_first_moment_exclude_one_flag():
    rep_all = first_moment(60.0, tol=1e-8, threads=1)
    rep_no1 = first_moment(60.0, tol=1e-8, threads=1, include_one=False)
    assert len(rep_all.rows) == len(rep_no1.rows) + 1
    one_term = rep_all.rows[0].l_value * rep_all.rows[0].weight
    assert abs((rep_all.total - one_term) - rep_no1.total) < 1e-12


def test_first_moment_threads_identical():
    rep1 = first_moment(60.0, tol=1e-8, threads=1)
    rep2 = first_moment(60.0, tol=1e-8, threads=2)
    assert rep1.total == rep2.total
    assert rep1.sigma1 == rep2.sigma1
    assert [r.s1 for r in rep1.rows] == [r.s1 for r in rep2.rows]


def test_first_moment_validation():
    with pytest.raises(ValueError):
        first_moment(5.0)
    with pytest.raises(ValueError):
        first_moment(100.0, cut=1e-6)
    with pytest.raises(ValueError):
        first_moment(100.0, x=0.5)


def test_sigma2_shrinks_as_x_grows():
    vals = []
    for x in (10.0, 40.0, 160.0):
        _s1, s2 = sigma_split(60.0, x=x, tol=1e-8, threads=1)
        vals.append(abs(s2))
    assert vals[0] > vals[1] > vals[2]


def test_total_x_invariance():
    r1 = first_moment(60.0, x=10.0, tol=1e-8, threads=1)
    r2 = first_moment(60.0, x=1000.0, tol=1e-8, threads=1)
    assert abs(r1.total - r2.total) <= 4e-8 * len(r1.rows)
    assert r1.sigma1 != r2.sigma1  # the split itself moves with x


def test_fourth_power_detection():
    b = G(-1, 2)
    assert _is_fourth_power(b ** 4)
    assert _is_fourth_power(ONE)
    assert not _is_fourth_power(b)
    assert not _is_fourth_power(b ** 2)
    assert not _is_fourth_power(b ** 4 * G(3, 2))


def test_pv_ratio_report():
    rep = pv_ratio_report(y=100.0, norm_bound=80)
    assert rep.rows
    # fourth powers and units are excluded
    assert all(not _is_fourth_power(row.a) for row in rep.rows)
    assert all(row.ratio >= 0 for row in rep.rows)
    assert rep.max_ratio == max(row.ratio for row in rep.rows)
    assert rep.passed == (rep.max_ratio <= rep.threshold)
    # a = 3+2i appears with a finite recorded ratio
    assert any(row.a == G(3, 2) for row in rep.rows)


def test_pv_ratios_do_not_grow_with_y():
    # max over a fixed small panel, tracked along a y-grid
    panel = None
    maxima = []
    for y in (50.0, 100.0, 200.0):
        rep = pv_ratio_report(y=y, norm_bound=50)
        if panel is None:
            panel = [row.a for row in rep.rows]
        by_a = {row.a: row.ratio for row in rep.rows}
        maxima.append(max(by_a[a] for a in panel))
    assert maxima[-1] <= max(maxima[0], maxima[1]) * 1.5 + 1.0


def test_sieve_ratio_report():
    rep = sieve_ratio_report(64, 64, trials=5, seed=3)
    assert len(rep.rows) == 5
    assert rep.max_ratio <= rep.threshold
    # determinism: same seed, same ratios
    rep2 = sieve_ratio_report(64, 64, trials=5, seed=3)
    assert [r.ratio for r in rep.rows] == [r.ratio for r in rep2.rows]
    rep3 = sieve_ratio_report(64, 64, trials=5, seed=4)
    assert [r.ratio for r in rep.rows] != [r.ratio for r in rep3.rows]


def test_sieve_single_support_trivial_bound():
    import numpy as np
    from quartic_hecke.characters import _sym_exp
    from quartic_hecke.gaussian import primary_in_disk
    # one nonzero coefficient: LHS <= #m, ratio <= #m / (M + N + ...) < 1
    m_bound = n_bound = 64
    ms = [m for m in primary_in_disk(m_bound) if m != ONE and is_squarefree(m)]
    lhs = sum(1 for m in ms if _sym_exp(3, 2, m.re, m.im) >= 0)
    bound = m_bound + n_bound + (m_bound * n_bound) ** (2 / 3)
    assert lhs / bound < 1.0


def test_sieve_validation():
    with pytest.raises(ValueError):
        sieve_ratio_report(8, 64)
    with pytest.raises(ValueError):
        sieve_ratio_report(64, 64, trials=0)
    with pytest.raises(ValueError):
        sieve_ratio_report(64, 64, coeff_kind="bogus")
