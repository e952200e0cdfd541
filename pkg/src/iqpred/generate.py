"""Deterministic generator of band-limited complex test sequences.

Each occupied frequency bin gets a unit-magnitude component with an
independent uniform random phase; the band is centered on DC, the DC bin
itself stays empty.  The inverse DFT of that spectrum is the time-domain
test signal, scaled to unit level before being returned.

Reproducibility: phases are drawn from numpy's PCG64 generator seeded
with ``spec.seed`` (positive-side bins first, then negative-side), so the
same spec always yields the bit-identical sequence.
"""

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    NormalizationMode,
    SequenceError,
    TooManySlotsError,
    normalize,
)


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters for one generated sequence.

    frac_pos_buckets is the fraction of the DFT length used as positive
    frequency slots (the same count is mirrored on the negative side);
    the total occupied bandwidth is therefore about twice this value.
    frac_pos_buckets == 0 degenerates to a single positive-frequency tone.
    """

    frac_pos_buckets: float
    seq_len: int
    norm_mode: NormalizationMode = NormalizationMode.MEAN_MAGNITUDE
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.frac_pos_buckets <= 0.5:
            raise SequenceError(
                f"frac_pos_buckets must be in [0, 0.5], got {self.frac_pos_buckets}"
            )
        if self.seq_len < 2 or self.seq_len & (self.seq_len - 1):
            raise SequenceError(
                f"seq_len must be a power of two >= 2, got {self.seq_len}"
            )
        if not 0 <= self.seed < 2**64:
            raise SequenceError("seed must fit in an unsigned 64-bit integer")


def _occupied_spectrum(frac_pos_buckets: float, seq_len: int,
                       rng: np.random.Generator) -> np.ndarray:
    """Frequency-domain array with unit-magnitude random-phase components."""
    if frac_pos_buckets == 0.0:
        num_pos, num_neg = 1, 0
    else:
        num_pos = math.floor(frac_pos_buckets * seq_len)
        num_neg = num_pos
    if num_pos > seq_len // 2:
        raise TooManySlotsError(
            f"{num_pos} positive frequency slots exceed half the length {seq_len}"
        )
    bins = np.zeros(seq_len, dtype=np.complex128)
    # positive side first, then negative: a shared Nyquist bin (the
    # frac == 0.5 boundary) keeps the negative-side draw
    bins[1:num_pos + 1] = np.exp(2j * np.pi * rng.random(num_pos))
    if num_neg:
        bins[seq_len - num_neg:] = np.exp(2j * np.pi * rng.random(num_neg))
    return bins


def generate(spec: GeneratorSpec):
    """Generate the time-domain sequence for ``spec``.

    Returns ``(sequence, normalization)`` where the sequence has been
    divided by the positive real ``normalization`` per ``spec.norm_mode``.
    """
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    bins = _occupied_spectrum(spec.frac_pos_buckets, spec.seq_len, rng)
    return normalize(np.fft.ifft(bins), spec.norm_mode)


def generate_ratio(ratio: float, seq_len: int,
                   norm_mode: NormalizationMode = NormalizationMode.MEAN_MAGNITUDE,
                   seed: int = 0):
    """Generate a sequence occupying ``ratio`` of the sampling bandwidth.

    Convenience wrapper: the occupied band is split evenly around DC, so
    the positive-side slot fraction is ``ratio / 2``.
    """
    if not 0.0 <= ratio <= 1.0:
        raise SequenceError(f"bandwidth ratio must be in [0, 1], got {ratio}")
    return generate(GeneratorSpec(ratio / 2.0, seq_len, norm_mode, seed))
