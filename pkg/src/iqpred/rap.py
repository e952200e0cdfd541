"""Residual-as-prediction: multi-pass residual encoder and its exact inverse.

The idea: predict each sample with the previous *residual* value, damped
by ``(1 - epsilon)``.  Pure residual feedback oscillates (a DC input of
10,10,10,... with a bad starting prediction rings forever), so the small
damping factor relaxes the loop; at DC the residual then settles to half
the input magnitude, and near half the sampling rate the loop amplifies
by ``1/epsilon``.  A per-pass magnitude threshold caps prediction values
so the residual range stays bounded on wideband inputs.

Passes compose: the residual stream of one pass is fed to the next as a
new input, sharpening the mid-band reduction at the cost of more edge
energy; published parameter sets cover 1, 2, and 3 passes.

Reconstruction is exact because the decoder sees every transmitted
residual and can therefore rebuild each pass's prediction state with the
same arithmetic the encoder used.  The decoder must be configured with
the identical epsilons, thresholds, rotation, and quantization step.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .core import MalformedStreamError, SequenceError, as_samples

UNBOUNDED_THRESHOLD = 1e30  # stands in for "no saturation"


@dataclass(frozen=True)
class RapConfig:
    """Per-pass parameters governing encode and decode symmetrically.

    epsilons / thresholds are parallel per-pass lists: damping factor in
    [0, 1) and prediction magnitude cap (in units of the *input* sequence
    amplitude; the published defaults assume input normalized to mean
    magnitude 1).  ``rotation``, when set, is a unit phasor multiplied
    into every prediction, for signals whose energy is not centered on
    DC.  ``quant_step`` snaps prediction components to a grid so the
    method can run against already-quantized integer sample streams.
    ``init_prediction_override`` replaces the default first-pass starting
    prediction (the first sample); it exists for demonstrating the
    undamped oscillation and travels with the config so decode stays
    exact.
    """

    epsilons: tuple[float, ...]
    thresholds: tuple[float, ...]
    rotation: complex | None = None
    quant_step: float | None = None
    init_prediction_override: complex | None = None

    def __post_init__(self):
        eps = tuple(float(e) for e in self.epsilons)
        thr = tuple(float(t) for t in self.thresholds)
        object.__setattr__(self, "epsilons", eps)
        object.__setattr__(self, "thresholds", thr)
        if len(eps) < 1 or len(eps) != len(thr):
            raise SequenceError(
                f"need one threshold per epsilon, got {len(eps)} and {len(thr)}"
            )
        if any(not 0.0 <= e < 1.0 for e in eps):
            raise SequenceError(f"epsilons must lie in [0, 1), got {eps}")
        if any(t <= 0.0 for t in thr):
            raise SequenceError(f"thresholds must be positive, got {thr}")
        if self.rotation is not None:
            rot = complex(self.rotation)
            object.__setattr__(self, "rotation", rot)
            if abs(abs(rot) - 1.0) > 1e-12:
                raise SequenceError(f"rotation phasor must have magnitude 1, got {rot}")
        if self.quant_step is not None and self.quant_step <= 0.0:
            raise SequenceError(f"quant_step must be positive, got {self.quant_step}")

    @property
    def passes(self) -> int:
        return len(self.epsilons)


# published parameter sets, tuned for input normalized to mean magnitude 1
DEFAULT_CONFIGS = {
    1: RapConfig(epsilons=(0.007,), thresholds=(2.75,)),
    2: RapConfig(epsilons=(0.012, 0.01), thresholds=(2.5, 2.2)),
    3: RapConfig(epsilons=(0.015, 0.03, 0.01), thresholds=(2.4, 1.4, 0.8)),
}


def default_config(passes: int) -> RapConfig:
    """The published parameter set for 1-, 2-, or 3-pass operation."""
    try:
        return DEFAULT_CONFIGS[passes]
    except KeyError:
        raise SequenceError(f"no published defaults for {passes} passes") from None


@dataclass(frozen=True)
class RapStream:
    """Final-pass residual sequence plus the config that produced it."""

    residuals: np.ndarray
    config: RapConfig


def clamp_magnitude(z: complex, threshold: float) -> complex:
    """Scale ``z`` down to magnitude ``threshold`` if it exceeds it (phase kept)."""
    if threshold <= 0.0:
        raise SequenceError(f"threshold must be positive, got {threshold}")
    z = complex(z)
    mag = abs(z)
    if mag > threshold:
        return z * (threshold / mag)
    return z


def quantize(z: complex, step: float) -> complex:
    """Round each component of ``z`` to the nearest multiple of ``step``.

    Ties round half away from zero, e.g. 0.25 at step 0.5 becomes 0.5.
    """
    if step <= 0.0:
        raise SequenceError(f"quantization step must be positive, got {step}")
    z = complex(z)
    return complex(
        math.copysign(math.floor(abs(z.real) / step + 0.5) * step, z.real),
        math.copysign(math.floor(abs(z.imag) / step + 0.5) * step, z.imag),
    )


def _kernel_args(first_value: complex, config: RapConfig):
    init_pred = (first_value if config.init_prediction_override is None
                 else complex(config.init_prediction_override))
    rotation = 1.0 + 0j if config.rotation is None else config.rotation
    quant_step = 0.0 if config.quant_step is None else config.quant_step
    return (
        np.asarray(config.epsilons, dtype=np.float64),
        np.asarray(config.thresholds, dtype=np.float64),
        init_pred,
        rotation,
        config.rotation is not None,
        quant_step,
        config.quant_step is not None,
    )


def rap_encode(seq, config: RapConfig) -> RapStream:
    """Run all passes over ``seq`` and return the final residual stream.

    The first residual equals the first input sample (the starter value
    every pass shares); the first pass's prediction starts from that same
    sample while deeper passes start from zero.  Per sample and pass, the
    new residual is ``previous-pass residual - prediction``, after which
    the pass prediction becomes that residual damped by ``1 - epsilon``,
    magnitude-clamped, and optionally rotated and quantized, in that
    order.
    """
    s = as_samples(seq)
    residuals = _backend.rap_encode(s, *_kernel_args(complex(s[0]), config))
    return RapStream(residuals, config)


def rap_decode(stream: RapStream) -> np.ndarray:
    """Invert :func:`rap_encode`; needs the exact config used to encode.

    Walks passes in reverse per sample, adding back each pass's
    prediction and updating the pass state from the incoming residual
    with the same damp/clamp/rotate/quantize pipeline the encoder
    applied, so every prediction the decoder forms matches the encoder's
    bit for bit.
    """
    config = stream.config
    if len(config.epsilons) != len(config.thresholds) or not config.epsilons:
        raise MalformedStreamError("stream config has mismatched epsilon/threshold lists")
    r = as_samples(stream.residuals)
    return _backend.rap_decode(r, *_kernel_args(complex(r[0]), config))
