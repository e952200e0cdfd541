"""Time-correlation prediction: one-tap linear predictor for complex sequences.

The predictor coefficient is the unit-delay autocorrelation normalized by
power.  Two variants:

* ``FullSequence`` computes one coefficient over the whole sequence
  (two passes over the data, non-causal) and applies it everywhere.
* ``Adaptive(epsilon)`` tracks the coefficient with a one-pole IIR update
  from instantaneous sample ratios; causal and streaming-friendly.

Both produce a residual stream whose first element is the original first
sample, and both reconstruct the input exactly (to float64 round-off)
because the decoder replays the encoder's state machine on reconstructed
samples.
"""

from dataclasses import dataclass

import numpy as np

from . import _backend
from .core import DegenerateInputError, MalformedStreamError, SequenceError, as_samples


@dataclass(frozen=True)
class FullSequence:
    """One correlation coefficient computed over the entire sequence."""


@dataclass(frozen=True)
class Adaptive:
    """Per-sample IIR-tracked correlation with smoothing factor ``epsilon``."""

    epsilon: float

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise SequenceError(f"adaptive epsilon must be in (0, 1), got {self.epsilon}")


TimeCorrMode = FullSequence | Adaptive


@dataclass(frozen=True)
class TimeCorrStream:
    """Residual sequence plus the side information needed to invert it.

    ``timecorr`` is the fixed predictor coefficient; only meaningful in
    FullSequence mode (the adaptive decoder re-derives its state from the
    reconstructed samples, so nothing extra is transmitted).
    """

    residuals: np.ndarray
    mode: TimeCorrMode
    timecorr: complex | None = None


def full_time_correlation(seq) -> complex:
    """Expected unit-delay correlation: sum(s[t]*conj(s[t-1])) / sum(|s[t-1]|^2).

    For a pure tone this has magnitude 1 and phase equal to the rotation
    per sample; the magnitude falls toward 0 as the occupied bandwidth
    approaches the sampling bandwidth.
    """
    s = as_samples(seq)
    if s.size < 2:
        raise SequenceError("time correlation needs at least two samples")
    prev = s[:-1]
    denom = float(np.vdot(prev, prev).real)
    if denom == 0.0:
        raise DegenerateInputError("zero power in the delayed samples")
    return complex(np.vdot(prev, s[1:]) / denom)


def _reconstructible(targets, predictions, residuals):
    """Nudge residuals so ``residual + prediction`` reconstructs each target
    sample bit-exactly under the decoder's arithmetic (see
    ``_backend.fix_residual``).  Vectorized correction first; the rare
    stragglers where a one-step correction cannot land get the scalar
    nudge loop."""
    for _ in range(2):
        recon = residuals + predictions
        bad = (recon.real != targets.real) | (recon.imag != targets.imag)
        if not bad.any():
            return residuals
        residuals[bad] -= recon[bad] - targets[bad]
    recon = residuals + predictions
    for i in np.flatnonzero((recon.real != targets.real) | (recon.imag != targets.imag)):
        residuals[i] = complex(
            _backend.fix_residual(float(targets[i].real), float(predictions[i].real)),
            _backend.fix_residual(float(targets[i].imag), float(predictions[i].imag)),
        )
    return residuals


def tc_encode(seq, mode: TimeCorrMode = FullSequence()) -> TimeCorrStream:
    """Encode ``seq`` into a residual stream under the given mode."""
    s = as_samples(seq)
    if isinstance(mode, FullSequence):
        # coefficient of a single-sample stream is never used by decode
        pred = full_time_correlation(s) if s.size >= 2 else 0j
        residuals = np.empty_like(s)
        residuals[0] = s[0]
        q = pred * s[:-1]
        residuals[1:] = _reconstructible(s[1:], q, s[1:] - q)
        return TimeCorrStream(residuals, mode, pred)
    if isinstance(mode, Adaptive):
        residuals = _backend.tc_encode_adaptive(s, mode.epsilon)
        return TimeCorrStream(residuals, mode, None)
    raise TypeError(f"unknown time-correlation mode: {mode!r}")


def tc_decode(stream: TimeCorrStream) -> np.ndarray:
    """Reconstruct the original sequence from a residual stream."""
    r = as_samples(stream.residuals)
    if isinstance(stream.mode, FullSequence):
        if stream.timecorr is None:
            raise MalformedStreamError("full-sequence stream lacks its coefficient")
        return _backend.tc_decode_const(r, complex(stream.timecorr))
    if isinstance(stream.mode, Adaptive):
        return _backend.tc_decode_adaptive(r, stream.mode.epsilon)
    raise MalformedStreamError(f"unknown time-correlation mode: {stream.mode!r}")
