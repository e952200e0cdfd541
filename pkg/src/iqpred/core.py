"""Shared sequence types, validation, and magnitude statistics.

A sequence is a 1-D ``numpy.complex128`` array with at least one element
and no NaN/Inf components.  Non-finite values are rejected at ingestion
because every predictor in this package is an infinite-impulse recurrence:
a single NaN would poison the rest of the stream.
"""

import enum

import numpy as np


class SequenceError(ValueError):
    """Base class for all sequence-domain errors raised by this package."""


class DegenerateInputError(SequenceError):
    """Input has no usable energy (all-zero where a nonzero value is required)."""


class TooManySlotsError(SequenceError):
    """More positive frequency slots requested than fit below Nyquist."""


class UnsupportedLengthError(SequenceError):
    """Operation requires a power-of-two sequence length."""


class MalformedStreamError(SequenceError):
    """Residual stream and its side information are inconsistent."""


class DomainError(SequenceError):
    """Scalar argument outside the mathematically valid domain."""


class NormalizationMode(enum.Enum):
    """How :func:`normalize` scales a sequence to unit level."""

    MEAN_MAGNITUDE = "mag"    # mean |sample| becomes 1
    RMS_POWER = "power"       # root-mean-square magnitude becomes 1


def as_samples(values) -> np.ndarray:
    """Validate and coerce input to a 1-D complex128 sample array.

    Raises SequenceError on empty input, wrong dimensionality, or any
    non-finite component.
    """
    arr = np.asarray(values, dtype=np.complex128)
    if arr.ndim != 1:
        raise SequenceError(f"expected a 1-D sequence, got shape {arr.shape}")
    if arr.size < 1:
        raise SequenceError("sequence must contain at least one sample")
    if not (np.isfinite(arr.real).all() and np.isfinite(arr.imag).all()):
        raise SequenceError("sequence contains NaN or Inf components")
    return arr


def mean_abs(seq) -> float:
    """Arithmetic mean of the sample magnitudes."""
    return float(np.mean(np.abs(as_samples(seq))))


def normalize(seq, mode: NormalizationMode = NormalizationMode.MEAN_MAGNITUDE):
    """Scale a sequence to unit level; returns ``(scaled, divisor)``.

    MEAN_MAGNITUDE mode makes ``mean_abs(scaled) == 1``; RMS_POWER mode
    makes the root-mean-square magnitude 1.  The divisor is the positive
    real the input was divided by (callers multiply it back when scaling
    spectra).  All-zero input raises :class:`DegenerateInputError`.
    """
    arr = as_samples(seq)
    if mode is NormalizationMode.MEAN_MAGNITUDE:
        divisor = float(np.mean(np.abs(arr)))
    elif mode is NormalizationMode.RMS_POWER:
        divisor = float(np.sqrt(np.mean(arr.real**2 + arr.imag**2)))
    else:
        raise TypeError(f"unknown normalization mode: {mode!r}")
    if divisor == 0.0:
        raise DegenerateInputError("cannot normalize an all-zero sequence")
    return arr / divisor, divisor
