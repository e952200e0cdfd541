"""iqpred: prediction front-end for lossless compression of complex I/Q sequences.

Encoders turn a sample sequence into a residual sequence of (usually)
smaller mean magnitude plus a little side information; decoders invert
them exactly.  Two predictor families are provided: a one-tap
time-correlation predictor (best for narrowband signals) and a multi-pass
residual-feedback predictor that keeps helping out to about 85% occupied
bandwidth.  The hot per-sample loops run in a compiled extension when
available; see ``iqpred._backend.backend_name()``.
"""

from ._backend import HAVE_COMPILED, backend_name
from .core import (
    DegenerateInputError,
    DomainError,
    MalformedStreamError,
    NormalizationMode,
    SequenceError,
    TooManySlotsError,
    UnsupportedLengthError,
    as_samples,
    mean_abs,
    normalize,
)
from .generate import GeneratorSpec, generate, generate_ratio
from .iqfile import SampleFormat, read_meta, read_samples, write_meta, write_samples
from .rap import (
    DEFAULT_CONFIGS,
    RapConfig,
    RapStream,
    clamp_magnitude,
    default_config,
    quantize,
    rap_decode,
    rap_encode,
)
from .select import (
    ALL_METHODS,
    Method,
    estimate_bandwidth,
    estimate_compression_factor,
    pick_best,
    select_by_bandwidth,
)
from .spectrum import (
    Spectrum,
    dft,
    idft,
    magnitude_spectrum,
    moving_mean,
    rap_transfer_magnitude,
)
from .sweep import (
    SweepConfig,
    SweepResult,
    run_magnitude_sweep,
    run_spectrum_experiment,
)
from .timecorr import (
    Adaptive,
    FullSequence,
    TimeCorrStream,
    full_time_correlation,
    tc_decode,
    tc_encode,
)

__version__ = "0.1.0"
