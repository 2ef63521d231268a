import math

import numpy as np
import pytest

from eegdist.stats import (
    DistributionError,
    betainc,
    f_cdf,
    f_sf,
    normal_cdf,
    studentized_range_cdf,
    studentized_range_ppf,
    t_cdf,
    t_two_sided,
)

from oracles import f_cdf_quad, normal_cdf_quad, ptukey_quad, qtukey_quad, t_cdf_quad

GRID = np.linspace(-6, 6, 50)


def test_symmetry_points():
    assert normal_cdf(0) == 0.5
    for df in (1, 2, 7, 300):
        assert t_cdf(0, df) == 0.5
    for d in (1, 3, 10, 295):
        assert f_cdf(1.0, d, d) == pytest.approx(0.5, abs=1e-14)


def test_normal_975():
    assert abs(normal_cdf(1.959964) - 0.975) < 1e-9
    assert abs(normal_cdf(1.959964) - normal_cdf_quad(1.959964)) < 1e-12


def test_normal_against_quadrature():
    for z in GRID:
        assert abs(normal_cdf(z) - normal_cdf_quad(z)) < 1e-10


@pytest.mark.parametrize("df", [1, 3, 10, 293])
def test_t_against_quadrature(df):
    for t in GRID:
        assert abs(t_cdf(t, df) - t_cdf_quad(t, df)) < 1e-10


@pytest.mark.parametrize("d1,d2", [(1, 1), (2, 293), (3, 1195), (5, 7)])
def test_f_against_quadrature(d1, d2):
    for f in np.linspace(0.01, 12, 50):
        assert abs(f_cdf(f, d1, d2) - f_cdf_quad(f, d1, d2)) < 1e-10


def test_far_tails_keep_relative_precision():
    # t = 78.96 on 295 df: two-sided p is astronomically small but positive
    p = t_two_sided(78.96, 295)
    assert 0 < p < 1e-150
    assert f_sf(1e4, 2, 295) > 0


def test_betainc_edges():
    assert betainc(2, 3, 0.0) == 0.0
    assert betainc(2, 3, 1.0) == 1.0
    # I_x(1, 1) = x
    assert betainc(1, 1, 0.3) == pytest.approx(0.3, abs=1e-15)
    with pytest.raises(DistributionError):
        betainc(0, 1, 0.5)


def test_invalid_df():
    with pytest.raises(DistributionError):
        t_cdf(1.0, 0)
    with pytest.raises(DistributionError):
        f_cdf(1.0, 1, 0.5)
    with pytest.raises(DistributionError):
        studentized_range_cdf(1.0, 1, 10)


@pytest.mark.parametrize("fn", ["normal", "t", "f", "ptukey"])
def test_cdfs_monotone_and_bounded(fn):
    xs = np.linspace(-8 if fn in ("normal", "t") else 0, 8, 41)
    vals = {
        "normal": [normal_cdf(x) for x in xs],
        "t": [t_cdf(x, 4) for x in xs],
        "f": [f_cdf(x, 3, 12) for x in xs],
        "ptukey": [studentized_range_cdf(x, 4, 20) for x in xs],
    }[fn]
    assert all(0.0 <= v <= 1.0 for v in vals)
    assert all(a <= b + 1e-15 for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("q,k,df", [(3.0, 3, 10), (2.2, 4, 1195), (1.0, 2, 1), (4.5, 6, 30)])
def test_ptukey_against_nested_quadrature(q, k, df):
    assert abs(studentized_range_cdf(q, k, df) - ptukey_quad(q, k, df)) < 1e-6


def test_qtukey_reference():
    q = studentized_range_ppf(0.95, 3, 10)
    assert abs(q - qtukey_quad(0.95, 3, 10)) < 5e-3
    assert abs(q - 3.877) < 5e-3


@pytest.mark.parametrize("t,df", [(0.2, 5), (1.3, 20), (2.9, 60), (4.0, 1000)])
def test_k2_range_equals_two_sided_t(t, df):
    assert abs((1 - studentized_range_cdf(math.sqrt(2) * t, 2, df)) - t_two_sided(t, df)) < 1e-6


def test_ptukey_infinite_df_limit():
    assert studentized_range_cdf(3.3, 3, math.inf) == pytest.approx(
        studentized_range_cdf(3.3, 3, 1e6), abs=1e-5
    )
