"""DFT magnitude spectra of sequences and residuals.

Conventions, pinned so the generator, Parseval checks, and spectrum
scaling agree end to end: forward transform uses the e^(-i2*pi*k*n/N)
sign with no scale factor, the inverse applies 1/N; magnitude spectra are
DC-centered with bin k at relative frequency k/N - 0.5.
"""

from dataclasses import dataclass

import numpy as np

from .core import UnsupportedLengthError, as_samples


@dataclass(frozen=True)
class Spectrum:
    """DC-centered magnitude-per-bin view of a sequence.

    ``freqs`` are fractions of the sampling rate in [-0.5, 0.5);
    ``mags`` are the scaled bin magnitudes.
    """

    freqs: np.ndarray
    mags: np.ndarray


def _require_pow2(n: int):
    if n < 1 or n & (n - 1):
        raise UnsupportedLengthError(f"length must be a power of two, got {n}")


def dft(seq) -> np.ndarray:
    """Forward DFT (unnormalized); power-of-two lengths only."""
    s = as_samples(seq)
    _require_pow2(s.size)
    return np.fft.fft(s)


def idft(seq) -> np.ndarray:
    """Inverse DFT (1/N-normalized); power-of-two lengths only."""
    s = as_samples(seq)
    _require_pow2(s.size)
    return np.fft.ifft(s)


def magnitude_spectrum(seq, normalization: float = 1.0) -> Spectrum:
    """DC-centered magnitude spectrum scaled by ``normalization``.

    Passing the divisor returned by the generator (or by
    ``core.normalize``) rescales bins so a unit-magnitude generated
    component reads as 1.0.
    """
    s = as_samples(seq)
    _require_pow2(s.size)
    mags = np.abs(np.fft.fftshift(np.fft.fft(s))) * normalization
    freqs = np.arange(s.size) / s.size - 0.5
    return Spectrum(freqs, mags)


def moving_mean(values, window: int) -> np.ndarray:
    """Centered moving average with windows that shrink at the edges.

    Index k averages values[max(0, k - (window-1)//2) : k + window//2 + 1].
    """
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    v = np.asarray(values, dtype=np.float64)
    if v.ndim != 1:
        raise ValueError("moving_mean expects a 1-D array")
    n = v.size
    k = np.arange(n)
    lo = np.maximum(0, k - (window - 1) // 2)
    hi = np.minimum(n - 1, k + window // 2)
    csum = np.concatenate(([0.0], np.cumsum(v)))
    return (csum[hi + 1] - csum[lo]) / (hi - lo + 1)


def rap_transfer_magnitude(freq: float, epsilon: float) -> float:
    """Single-pass residual-feedback gain at relative frequency ``freq``.

    The residual recurrence r[t] = s[t] - (1-eps)*r[t-1] acts as a filter
    with magnitude response 1/|1 + (1-eps)*e^(-i*2*pi*f)|: about 1/2 at
    DC and 1/eps at half the sampling rate.
    """
    return 1.0 / abs(1.0 + (1.0 - epsilon) * np.exp(-2j * np.pi * freq))
