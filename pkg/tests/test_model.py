import math
from fractions import Fraction
from math import comb

import numpy as np
import pytest

from edergm import (
    CensusCacheError,
    CensusSizeError,
    build_census,
    count_integer_points,
    distribution_rows,
    exact_distribution,
    load_census,
    log_partition,
    mean_stat,
    mle_exists,
    mle_fit,
    moments,
    save_census,
)


# ---------------------------------------------------------------------- census


def test_census_n3_exact(census_tables):
    assert census_tables[3].counts == {
        (0, 0): 1,
        (1, 1): 3,
        (2, 1): 3,
        (3, 2): 1,
    }
    assert census_tables[3].total() == 8


def test_census_totals(census_tables):
    for n in range(3, 8):
        assert census_tables[n].total() == 2 ** comb(n, 2)


def test_census_support_sizes(census_tables):
    for n in range(3, 8):
        assert len(census_tables[n].support()) == count_integer_points(n)


def test_census_tree_counts(census_tables):
    # labeled trees on n nodes: n^(n-2)
    for n in range(3, 8):
        assert census_tables[n].counts[(n - 1, 1)] == n ** (n - 2)


def test_census_near_complete_counts(census_tables):
    for n in range(4, 8):
        assert census_tables[n].counts[(comb(n, 2) - 1, n - 2)] == comb(n, 2)


def test_census_clique_counts(census_tables):
    for n in (5, 6, 7):
        for d in range(1, n):
            assert census_tables[n].counts[(comb(d + 1, 2), d)] == comb(n, d + 1)


def test_census_support_symmetric(census_tables):
    # the support maps to itself under 180-degree rotation about the center
    for n in range(3, 8):
        sup = census_tables[n].support()
        cx2, cy2 = n * (n - 1) // 2, n - 1
        assert {(cx2 - e, cy2 - d) for (e, d) in sup} == sup


def test_census_size_guard():
    with pytest.raises(CensusSizeError):
        build_census(8)
    with pytest.raises(ValueError):
        build_census(2)


def test_census_allow_large_overrides_guard():
    # n=8 is allowed when asked for explicitly; don't run it here, just check
    # that the guard distinguishes the flag by running a small allowed case
    t = build_census(3, allow_large=True)
    assert t.total() == 8


# ----------------------------------------------------------------------- cache


def test_cache_round_trip(tmp_path, census_tables):
    p = tmp_path / "c5.txt"
    save_census(census_tables[5], p)
    loaded = load_census(p)
    assert loaded.n == 5 and loaded.counts == census_tables[5].counts
    head = p.read_text().splitlines()[0]
    assert head == "edergm-census v1 n=5 pairs=lex"


def test_build_census_uses_cache(tmp_path):
    t1 = build_census(4, cache_dir=tmp_path)
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    t2 = build_census(4, cache_dir=tmp_path)
    assert t2.counts == t1.counts


def test_corrupt_cache_is_rejected_then_rebuilt(tmp_path):
    build_census(4, cache_dir=tmp_path)
    (path,) = tmp_path.iterdir()
    text = path.read_text()
    path.write_text(text.replace("1 1", "1 2", 1))  # break one row
    with pytest.raises(CensusCacheError):
        load_census(path)
    t = build_census(4, cache_dir=tmp_path)  # quietly rebuilds
    assert t.total() == 2 ** 6
    load_census(path)  # and rewrites a valid file


def test_load_census_header_errors(tmp_path):
    p = tmp_path / "bad.txt"
    for text in (
        "",
        "not a header\n",
        "edergm-census v999 n=4 pairs=lex\n",
        "edergm-census v1 n=x pairs=lex\n",
        "edergm-census v1 n=4 pairs=lex\n0 0\n",  # short row
        "edergm-census v1 n=4 pairs=lex\n0 0 1\n0 0 1\n",  # duplicate
        "edergm-census v1 n=4 pairs=lex\n0 0 one\n",
    ):
        p.write_text(text)
        with pytest.raises(CensusCacheError):
            load_census(p)


def test_load_census_wrong_n(tmp_path, census_tables):
    p = tmp_path / "c4.txt"
    save_census(census_tables[4], p)
    with pytest.raises(CensusCacheError):
        load_census(p, expect_n=5)


# ----------------------------------------------------- partition, distribution


def test_log_partition_closed_form(census_tables):
    t3 = census_tables[3]
    theta = (10.0, 0.0)
    expect = math.log(1 + 3 * math.exp(10 / 3) + 3 * math.exp(20 / 3) + math.exp(10.0))
    assert math.isclose(log_partition(t3, theta), expect, rel_tol=1e-13)
    # at theta = 0 the partition function counts all graphs
    assert math.isclose(log_partition(t3, (0.0, 0.0)), math.log(8), rel_tol=1e-13)


def test_log_partition_extreme_theta_is_stable(census_tables):
    val = log_partition(census_tables[5], (800.0, -900.0))
    assert math.isfinite(val)


def test_exact_distribution_uniform(census_tables):
    t = census_tables[4]
    dist = exact_distribution(t, (0.0, 0.0))
    assert math.isclose(sum(dist.values()), 1.0, rel_tol=1e-12)
    for cls, p in dist.items():
        assert math.isclose(p, t.counts[cls] / t.total(), rel_tol=1e-12)


def test_exact_distribution_tilts_toward_dense(census_tables):
    dist = exact_distribution(census_tables[5], (100.0, 0.0))
    assert dist[(10, 4)] > 0.999


def test_distribution_rows_sorted_and_normalized(census_tables):
    rows = distribution_rows(census_tables[5], (1.0, -1.0))
    assert [(d, e) for (e, d, _, _) in rows] == sorted((d, e) for (e, d, _, _) in rows)
    assert math.isclose(sum(p for (_, _, _, p) in rows), 1.0, rel_tol=1e-12)
    assert all(c > 0 for (_, _, c, _) in rows)


# --------------------------------------------------------------------- moments


def test_mean_stat_uniform(census_tables):
    mx, my = mean_stat(census_tables[3], (0.0, 0.0))
    assert math.isclose(mx, 0.5, rel_tol=1e-12)
    assert math.isclose(my, 0.5, rel_tol=1e-12)


def test_moments_covariance(census_tables):
    mean, cov = moments(census_tables[5], (1.0, -2.0))
    assert cov.shape == (2, 2)
    assert math.isclose(cov[0, 1], cov[1, 0], rel_tol=1e-12)
    assert cov[0, 0] > 0 and cov[1, 1] > 0
    eig = np.linalg.eigvalsh(cov)
    assert eig.min() > -1e-15


def test_gradient_matches_mean(census_tables):
    # d(psi)/d(theta) equals the mean statistic: central differences
    rng = np.random.default_rng(7)
    t = census_tables[4]
    h = 1e-5
    for _ in range(5):
        th = tuple(rng.uniform(-3, 3, size=2))
        mx, my = mean_stat(t, th)
        gx = (log_partition(t, (th[0] + h, th[1])) - log_partition(t, (th[0] - h, th[1]))) / (2 * h)
        gy = (log_partition(t, (th[0], th[1] + h)) - log_partition(t, (th[0], th[1] - h))) / (2 * h)
        assert math.isclose(gx, mx, abs_tol=1e-7)
        assert math.isclose(gy, my, abs_tol=1e-7)


# ------------------------------------------------------------------------- mle


def test_mle_round_trip(census_tables):
    t = census_tables[5]
    theta0 = (2.0, -3.0)
    target = mean_stat(t, theta0)
    fit = mle_fit(t, target)
    assert fit.status == "ok"
    assert abs(fit.theta[0] - theta0[0]) < 1e-6
    assert abs(fit.theta[1] - theta0[1]) < 1e-6
    assert fit.gap < 1e-8


def test_mle_no_mle_on_boundary(census_tables):
    t = census_tables[5]
    for bad in (("3/10", "1/2"), (0, 0), (1, 1), (2, 2)):
        fit = mle_fit(t, bad)
        assert fit.status == "no_mle"
        assert fit.theta is None


def test_mle_agrees_with_existence_test(census_tables):
    t = census_tables[5]
    probes = [
        (Fraction(1, 2), Fraction(1, 4)),
        (Fraction(45, 100), Fraction(55, 100)),
        (Fraction(9, 10), Fraction(9, 10)),
        (Fraction(1, 20), Fraction(1, 20)),
        (Fraction(3, 10), Fraction(1, 2)),
    ]
    for p in probes:
        fit = mle_fit(t, p)
        assert (fit.status == "ok") == mle_exists(5, (p[0] * 10, p[1] * 4))


def test_mle_fixed_point(census_tables):
    # at the fitted parameter the model mean reproduces the observation
    t = census_tables[6]
    fit = mle_fit(t, (0.4, 0.45))
    assert fit.status == "ok"
    mx, my = mean_stat(t, fit.theta)
    assert abs(mx - 0.4) < 1e-8 and abs(my - 0.45) < 1e-8


def test_mle_rejects_junk():
    t = build_census(3)
    with pytest.raises(ValueError):
        mle_fit(t, (0.5,))
