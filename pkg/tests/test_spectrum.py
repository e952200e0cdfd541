import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from iqpred import (
    UnsupportedLengthError,
    default_config,
    dft,
    generate_ratio,
    idft,
    magnitude_spectrum,
    moving_mean,
    rap_encode,
    rap_transfer_magnitude,
)
from tests.conftest import bandlimited, white_noise


def naive_dft(x):
    """Brute-force O(n^2) transform, independent of any FFT structure."""
    x = np.asarray(x, dtype=complex)
    n = x.size
    k = np.arange(n)
    return np.array([np.sum(x * np.exp(-2j * np.pi * kk * k / n)) for kk in range(n)])


class TestDft:
    def test_impulse_is_flat(self):
        np.testing.assert_allclose(dft([1, 0, 0, 0]), [1, 1, 1, 1], atol=1e-12)

    def test_constant_concentrates_at_dc(self):
        np.testing.assert_allclose(dft([1, 1, 1, 1]), [4, 0, 0, 0], atol=1e-12)

    def test_matches_naive_oracle(self):
        x = white_noise(256, 42)
        np.testing.assert_allclose(dft(x), naive_dft(x), atol=1e-9)

    def test_rejects_non_power_of_two(self):
        with pytest.raises(UnsupportedLengthError):
            dft(np.ones(24, dtype=complex))

    def test_roundtrip_with_inverse(self):
        x = white_noise(1024, 5)
        np.testing.assert_allclose(idft(dft(x)), x, atol=1e-9 * np.abs(x).max())


class TestMagnitudeSpectrum:
    def test_generated_bins_read_unity(self):
        seq, divisor = generate_ratio(0.3, 8192, seed=4)
        spec = magnitude_spectrum(seq, divisor)
        occupied = spec.mags > 0.5
        np.testing.assert_allclose(spec.mags[occupied], 1.0, atol=1e-9)
        assert np.count_nonzero(occupied) == 2 * int(0.15 * 8192)
        assert spec.mags[~occupied].max() < 1e-9

    def test_all_zero_input(self):
        spec = magnitude_spectrum(np.zeros(16, dtype=complex))
        np.testing.assert_array_equal(spec.mags, np.zeros(16))

    def test_frequency_axis_convention(self):
        spec = magnitude_spectrum(np.ones(8, dtype=complex))
        np.testing.assert_allclose(spec.freqs, np.arange(8) / 8 - 0.5)
        # DC lands exactly at the center bin after the shift
        assert spec.freqs[4] == 0.0
        assert spec.mags[4] == pytest.approx(8.0)

    def test_global_phase_invariance(self):
        seq = white_noise(512, 6)
        a = magnitude_spectrum(seq).mags
        b = magnitude_spectrum(seq * np.exp(0.7j)).mags
        np.testing.assert_allclose(a, b, atol=1e-12 * a.max())

    def test_rap_residual_near_dc_level(self):
        seq, divisor = generate_ratio(0.5, 65536, seed=12)
        residuals = rap_encode(seq, default_config(1)).residuals
        spec = magnitude_spectrum(residuals, divisor)
        near_dc = np.abs(spec.freqs) < 0.01
        assert spec.mags[near_dc].mean() == pytest.approx(0.5, abs=0.1)


class TestMovingMean:
    def test_window_one_is_identity(self):
        values = [3.0, -1.0, 2.0, 8.0]
        np.testing.assert_array_equal(moving_mean(values, 1), values)

    def test_constant_invariance(self):
        np.testing.assert_allclose(moving_mean([1.0] * 4, 10), [1.0] * 4)

    def test_hand_case_shrinking_edges(self):
        out = moving_mean([0, 0, 4, 0, 0], 3)
        np.testing.assert_allclose(out, [0, 4 / 3, 4 / 3, 4 / 3, 0])

    def test_rejects_bad_window(self):
        with pytest.raises(ValueError):
            moving_mean([1.0], 0)

    @settings(max_examples=40, deadline=None)
    @given(
        n=st.integers(1, 40),
        window=st.integers(1, 15),
        seed=st.integers(0, 2**31),
    )
    def test_matches_bruteforce_windows(self, n, window, seed):
        values = np.random.default_rng(seed).standard_normal(n)
        out = moving_mean(values, window)
        for k in range(n):
            lo = max(0, k - (window - 1) // 2)
            hi = min(n - 1, k + window // 2)
            assert out[k] == pytest.approx(values[lo:hi + 1].mean(), rel=1e-12, abs=1e-12)


class TestTransferMagnitude:
    def test_dc_is_half_for_small_epsilon(self):
        assert rap_transfer_magnitude(0.0, 1e-9) == pytest.approx(0.5, abs=1e-6)

    def test_nyquist_is_inverse_epsilon(self):
        assert rap_transfer_magnitude(0.5, 0.01) == pytest.approx(100.0, rel=1e-9)

    def test_epsilon_one_kills_feedback(self):
        for f in (-0.5, -0.2, 0.0, 0.3, 0.5):
            assert rap_transfer_magnitude(f, 1.0) == pytest.approx(1.0)

    def test_even_in_frequency(self):
        for f in (0.1, 0.25, 0.4):
            assert rap_transfer_magnitude(f, 0.02) == pytest.approx(
                rap_transfer_magnitude(-f, 0.02), rel=1e-12)

    def test_monotone_on_positive_half(self):
        grid = np.linspace(0, 0.5, 101)
        vals = [rap_transfer_magnitude(f, 0.05) for f in grid]
        assert all(b > a for a, b in zip(vals, vals[1:]))
