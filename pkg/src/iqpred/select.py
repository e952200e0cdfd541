"""Residual quality metrics and method-selection policies.

Two ways to choose a predictor for a block of samples: a fixed policy
keyed on occupied bandwidth, or brute force (encode with every candidate
and keep the one with the smallest mean residual magnitude).
"""

import enum
import math

import numpy as np

from .core import DegenerateInputError, DomainError, SequenceError, as_samples, mean_abs
from .rap import default_config, rap_encode
from .spectrum import dft
from .timecorr import Adaptive, tc_encode

# smoothing factor for the causal correlation tracker used by pick_best
PICK_BEST_TC_EPSILON = 0.01


class Method(enum.Enum):
    """Prediction method identity, as recorded in sidecar metadata."""

    BYPASS = "bypass"
    TIMECORR = "timecorr"
    RAP1 = "rap1"
    RAP2 = "rap2"
    RAP3 = "rap3"

    @property
    def rap_passes(self) -> int | None:
        return {"rap1": 1, "rap2": 2, "rap3": 3}.get(self.value)


ALL_METHODS = (Method.BYPASS, Method.TIMECORR, Method.RAP1, Method.RAP2, Method.RAP3)


def estimate_compression_factor(amplitude_ratio: float, bits_per_component: int) -> float:
    """Compressed-size / original-size estimate from a residual amplitude ratio.

    Model: shrinking the amplitude by a factor saves log2(1/factor) of the
    ``bits_per_component`` bits on each component, so the factor is
    (bits + log2(ratio)) / bits.  Clamped to [0, 1]; smaller is better.
    """
    if amplitude_ratio <= 0.0:
        raise DomainError(f"amplitude ratio must be positive, got {amplitude_ratio}")
    if amplitude_ratio > 1.0:
        raise DomainError(f"amplitude ratio must be <= 1, got {amplitude_ratio}")
    if bits_per_component < 2:
        raise DomainError(f"need at least 2 bits per component, got {bits_per_component}")
    factor = (bits_per_component + math.log2(amplitude_ratio)) / bits_per_component
    return min(1.0, max(0.0, factor))


def estimate_bandwidth(seq) -> float:
    """Fraction of DFT bins whose magnitude exceeds 10% of the peak bin.

    Tuned to the flat unit-magnitude spectra produced by the generator;
    shaped real-world spectra would need a different occupancy rule.
    """
    bins = np.abs(dft(seq))
    peak = bins.max()
    if peak == 0.0:
        raise DegenerateInputError("cannot estimate bandwidth of an all-zero sequence")
    return float(np.count_nonzero(bins > 0.1 * peak)) / bins.size


def select_by_bandwidth(bw_fraction: float) -> Method:
    """Fixed policy: pick the method for a given occupied-bandwidth fraction.

    Bands: below 8% time correlation, 8%..74% 3-pass residual feedback,
    above 74% up to 85% 1-pass, beyond that bypass (residuals would not
    be smaller than the input).
    """
    if not 0.0 <= bw_fraction <= 1.0:
        raise SequenceError(f"bandwidth fraction must be in [0, 1], got {bw_fraction}")
    if bw_fraction < 0.08:
        return Method.TIMECORR
    if bw_fraction <= 0.74:
        return Method.RAP3
    if bw_fraction <= 0.85:
        return Method.RAP1
    return Method.BYPASS


def encode_with(seq, method: Method):
    """Encode ``seq`` with one method; returns (stream, residual array).

    BYPASS passes the sequence through unchanged; TIMECORR uses the
    causal adaptive tracker (epsilon PICK_BEST_TC_EPSILON); RAPn uses the
    published n-pass defaults.
    """
    s = as_samples(seq)
    if method is Method.BYPASS:
        return s, s
    if method is Method.TIMECORR:
        stream = tc_encode(s, Adaptive(PICK_BEST_TC_EPSILON))
        return stream, stream.residuals
    passes = method.rap_passes
    if passes is None:
        raise SequenceError(f"cannot encode with method {method!r}")
    stream = rap_encode(s, default_config(passes))
    return stream, stream.residuals


def pick_best(seq, candidates=ALL_METHODS):
    """Encode with every candidate and keep the smallest mean residual.

    Returns ``(method, stream, mean_abs)``.  Ties go to the earlier
    candidate, so listing BYPASS first means prediction must strictly
    help to be chosen.
    """
    if not candidates:
        raise SequenceError("need at least one candidate method")
    best = None
    for method in candidates:
        stream, residuals = encode_with(seq, method)
        score = mean_abs(residuals)
        if best is None or score < best[2]:
            best = (method, stream, score)
    return best
