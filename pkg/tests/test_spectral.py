import numpy as np
import pytest

from src.domain import SpectralError, Spectrum
from src.spectral import dft, dirichlet_kernel, dirichlet_smooth, idft, is_full_band, lowpass, passband_mask
from src.synth import benchmark_function


# ----------------------------------------------------------------------
# dft / idft
# ----------------------------------------------------------------------

def test_constant_signal_has_only_dc():
    spec = dft([2.5, 2.5, 2.5, 2.5])
    np.testing.assert_allclose(spec.coefficients, [10.0, 0.0, 0.0, 0.0], atol=1e-12)
    np.testing.assert_allclose(idft(spec), [2.5] * 4, atol=1e-12)


def test_single_cosine_lands_in_two_bins():
    t = np.arange(8)
    coeffs = dft(np.cos(2 * np.pi * t / 8)).coefficients
    expected = np.zeros(8)
    expected[1] = expected[7] = 4.0
    np.testing.assert_allclose(coeffs, expected, atol=1e-9)


def test_bin_spacing_follows_window_width():
    assert dft(np.ones(16)).bin_spacing == pytest.approx(1 / 16)
    assert dft(np.ones(16), window_width=100.0).bin_spacing == pytest.approx(0.01)


def test_benchmark_round_trip():
    x = np.linspace(-25, 25, 2048)
    s = benchmark_function(x)
    np.testing.assert_allclose(idft(dft(s)), s, atol=1e-9)


def test_non_symmetric_spectrum_is_rejected():
    with pytest.raises(SpectralError, match="imaginary residue"):
        idft(Spectrum([0.0, 1.0, 0.0, 0.0], 1.0))


def test_empty_signal_is_rejected():
    with pytest.raises(SpectralError):
        dft([])


@pytest.mark.parametrize("m", [8, 64, 1024, 4096])
def test_transform_properties(m, rng):
    for _ in range(100):
        s = rng.normal(size=m)
        spec = dft(s)
        c = spec.coefficients

        np.testing.assert_allclose(idft(spec), s, atol=1e-9)
        assert spec.is_conjugate_symmetric()
        # Parseval.
        assert np.sum(np.abs(c) ** 2) / m == pytest.approx(np.sum(s**2), rel=1e-9)
        np.testing.assert_allclose(c, np.fft.fft(s), atol=1e-8 * np.sqrt(m))

        # Linearity.
        other = rng.normal(size=m)
        a, b = rng.normal(size=2)
        np.testing.assert_allclose(dft(a * s + b * other).coefficients, a * c + b * dft(other).coefficients, atol=1e-9)


@pytest.mark.parametrize("m", [3, 6, 12])
def test_direct_path_for_other_lengths(m, rng):
    s = rng.normal(size=m)
    np.testing.assert_allclose(dft(s).coefficients, np.fft.fft(s), atol=1e-10)
    np.testing.assert_allclose(idft(dft(s)), s, atol=1e-10)


# ----------------------------------------------------------------------
# lowpass
# ----------------------------------------------------------------------

def test_passband_is_closed():
    assert passband_mask(8, 1).tolist() == [True, True, False, False, False, False, False, True]
    assert passband_mask(8, 0).tolist() == [True] + [False] * 7
    assert is_full_band(8, 4) and not is_full_band(8, 3)
    assert is_full_band(7, 3)


def test_full_band_filter_is_identity(rng):
    spec = dft(rng.normal(size=32))
    assert np.array_equal(lowpass(spec, 16).coefficients, spec.coefficients)
    assert np.array_equal(lowpass(spec, 100).coefficients, spec.coefficients)


def test_dc_only_reconstructs_the_mean(rng):
    s = rng.normal(size=64)
    np.testing.assert_allclose(idft(lowpass(dft(s), 0)), np.full(64, s.mean()), atol=1e-12)


def test_lowpass_removes_out_of_band_harmonic():
    t = np.arange(16)
    s = 2 + np.cos(2 * np.pi * 3 * t / 16)
    np.testing.assert_allclose(idft(lowpass(dft(s), 2)), np.full(16, 2.0), atol=1e-12)


def test_lowpass_is_idempotent_and_keeps_bins(rng):
    spec = dft(rng.normal(size=64))
    once = lowpass(spec, 5)
    twice = lowpass(once, 5)
    assert np.array_equal(once.coefficients, twice.coefficients)
    kept = passband_mask(64, 5)
    assert np.array_equal(once.coefficients[kept], spec.coefficients[kept])
    assert once.is_conjugate_symmetric()


@pytest.mark.parametrize("m", [8, 64, 1024])
def test_lowpass_bands_nest(m, rng):
    for _ in range(20):
        spec = dft(rng.normal(size=m))
        h1, h2 = sorted(int(h) for h in rng.integers(0, m // 2 + 2, size=2))
        narrow = lowpass(spec, h1).coefficients
        assert np.array_equal(lowpass(lowpass(spec, h2), h1).coefficients, narrow)
        assert np.array_equal(lowpass(lowpass(spec, h1), h2).coefficients, narrow)


def test_lowpass_rejects_negative_half_width():
    with pytest.raises(ValueError):
        lowpass(dft(np.ones(4)), -1)


# ----------------------------------------------------------------------
# Dirichlet oracle
# ----------------------------------------------------------------------

def test_kernel_sums_to_one():
    for h in (0, 3, 10):
        assert dirichlet_kernel(64, h).sum() == pytest.approx(1.0)


def test_smooth_full_band_and_dc(rng):
    s = rng.normal(size=16)
    np.testing.assert_allclose(dirichlet_smooth(s, 8), s)
    np.testing.assert_allclose(dirichlet_smooth(s, 0), np.full(16, s.mean()), atol=1e-12)


def test_smooth_matches_frequency_path(rng):
    s = rng.normal(size=256)
    assert np.max(np.abs(dirichlet_smooth(s, 5) - idft(lowpass(dft(s), 5)))) < 1e-8


@pytest.mark.parametrize("m", [16, 64, 256])
def test_convolution_theorem(m, rng):
    for _ in range(20):
        s = rng.normal(size=m)
        for h in range(m // 2):
            spatial = dirichlet_smooth(s, h)
            spectral = idft(lowpass(dft(s), h))
            assert np.max(np.abs(spatial - spectral)) < 1e-8
