import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eegdist.signal_io import Signal
from eegdist.wavelet import (
    SUPPORTED_FILTER_LENGTHS,
    CoefficientSet,
    WaveletError,
    WaveletSpec,
    daubechies_filter,
    dwt,
    idwt,
    idwt_array,
)

FLENS = list(SUPPORTED_FILTER_LENGTHS)


def test_haar_filter():
    np.testing.assert_allclose(daubechies_filter(2), [1 / math.sqrt(2)] * 2, atol=1e-16)


@pytest.mark.parametrize("flen", FLENS)
def test_filter_sums_to_sqrt2(flen):
    assert abs(daubechies_filter(flen).sum() - math.sqrt(2)) < 1e-12


@pytest.mark.parametrize("flen", FLENS)
def test_filter_double_shift_orthonormal(flen):
    h = daubechies_filter(flen)
    for k in range(flen // 2):
        dot = float(np.dot(h[: flen - 2 * k], h[2 * k :]))
        assert abs(dot - (1.0 if k == 0 else 0.0)) < 1e-10


@pytest.mark.parametrize("bad", [0, 1, 3, 22, -2])
def test_unsupported_filter_length(bad):
    with pytest.raises(WaveletError):
        daubechies_filter(bad)
    with pytest.raises(WaveletError):
        WaveletSpec(bad, 1)


def test_haar_single_level_by_hand(backend):
    c = dwt(np.array([1.0, 1.0]), WaveletSpec(2, 1))
    np.testing.assert_allclose(c.approximation, [math.sqrt(2)], atol=1e-15)
    np.testing.assert_allclose(c.details[0], [0.0], atol=1e-15)


@pytest.mark.parametrize("flen", FLENS)
def test_constant_signal_has_no_detail(flen, backend):
    c = dwt(np.full(256, 3.7), WaveletSpec(flen, 5))
    assert np.max(np.abs(c.flat[c.ns >> 5 :])) < 1e-10


def test_length_must_divide(backend):
    with pytest.raises(WaveletError):
        dwt(np.ones(100), WaveletSpec(4, 3))


def test_pyramid_layout():
    c = dwt(np.arange(64.0), WaveletSpec(4, 3))
    assert c.approximation.size == 8
    assert [d.size for d in c.details] == [8, 16, 32]
    assert c.m == 64 and c.keep_mask.all()


@pytest.mark.parametrize("flen", FLENS)
@pytest.mark.parametrize("levels", [1, 3, 5])
def test_round_trip_and_parseval(flen, levels, rng, backend):
    x = rng.standard_normal(4096) * 50
    spec = WaveletSpec(flen, levels)
    c = dwt(x, spec)
    r = idwt_array(c, spec)
    assert np.linalg.norm(r - x) / np.linalg.norm(x) < 1e-9
    assert abs(np.sum(c.flat**2) / np.sum(x**2) - 1) < 1e-9


def test_all_zero_coefficients_give_zero_signal():
    spec = WaveletSpec(6, 2)
    out = idwt_array(CoefficientSet(np.zeros(16), 2, 16), spec)
    assert np.all(out == 0)


@pytest.mark.parametrize("flen", [2, 8, 20])
def test_constant_survives_detail_masking(flen):
    spec = WaveletSpec(flen, 4)
    c = dwt(np.full(128, -12.5), spec)
    mask = np.zeros(128, bool)
    mask[: 128 >> 4] = True
    out = idwt(c.with_mask(mask), spec)
    np.testing.assert_allclose(out.samples, -12.5, rtol=1e-9)


@pytest.mark.parametrize("flen", FLENS)
def test_polynomial_annihilation(flen):
    k = flen // 2
    n = 512
    t = np.arange(n) / n
    x = sum((i + 1) * (t - 0.5) ** i for i in range(k))  # degree k-1
    c = dwt(x, WaveletSpec(flen, 1))
    detail = c.details[0]
    # coefficient j touches x[2j .. 2j+F-1]; keep those clear of the wrap-around
    interior = detail[: (n - flen) // 2]
    assert np.max(np.abs(interior)) < 1e-6 * np.max(np.abs(x))


def test_idwt_level_mismatch():
    c = dwt(np.ones(32), WaveletSpec(2, 2))
    with pytest.raises(WaveletError):
        idwt(c, WaveletSpec(2, 3))


def test_signal_input_accepted():
    s = Signal(np.arange(16.0))
    assert dwt(s, WaveletSpec(2, 2)).ns == 16


@settings(max_examples=40, deadline=None)
@given(
    flen=st.sampled_from(FLENS),
    levels=st.integers(1, 5),
    k=st.integers(5, 12),
    seed=st.integers(0, 2**32 - 1),
    a=st.floats(-10, 10),
    b=st.floats(-10, 10),
)
def test_linearity_and_reconstruction(flen, levels, k, seed, a, b):
    gen = np.random.default_rng(seed)
    x, y = gen.standard_normal((2, 1 << k))
    spec = WaveletSpec(flen, levels)
    lhs = dwt(a * x + b * y, spec).flat
    rhs = a * dwt(x, spec).flat + b * dwt(y, spec).flat
    assert np.allclose(lhs, rhs, rtol=1e-9, atol=1e-9 * (abs(a) + abs(b) + 1))
    r = idwt_array(dwt(x, spec), spec)
    assert np.linalg.norm(r - x) / np.linalg.norm(x) < 1e-9
