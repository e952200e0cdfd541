"""Experiment harness: residual-magnitude sweeps and residual spectra.

``run_magnitude_sweep`` measures mean residual magnitude per method over
a grid of occupied-bandwidth ratios, averaged over seeded trials; its CSV
output is what the comparison plots are made from.  ``run_spectrum_experiment``
produces the frequency-domain view: time-correlation residual spectra at
three bandwidths, and 1/2/3-pass residual-feedback spectra at half-band.

Reproducibility: the sequence for trial t of ratio index r is seeded with
the first 64-bit word of ``numpy.random.SeedSequence([seed, r, t])``, so
trials are independent but the whole experiment is a pure function of the
configured seed.
"""

from dataclasses import dataclass, field

import numpy as np

from .core import NormalizationMode, SequenceError, mean_abs
from .generate import generate_ratio
from .rap import default_config, rap_encode
from .spectrum import magnitude_spectrum, moving_mean
from .timecorr import Adaptive, FullSequence, tc_encode

DEFAULT_RATIOS = tuple(round(0.05 * i, 2) for i in range(19))  # 0.00 .. 0.90


def derive_seed(seed: int, *path: int) -> int:
    """Mix a base seed with integer coordinates into an independent seed."""
    return int(np.random.SeedSequence([seed, *path]).generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class SweepConfig:
    ratios: tuple[float, ...] = DEFAULT_RATIOS
    trials: int = 10
    seq_len: int = 65536
    seed: int = 0
    adaptive_eps: float = 0.01     # correlation tracker used below the cutoff
    adaptive_cutoff: float = 0.2   # full-sequence correlation from here up

    def __post_init__(self):
        if not self.ratios or any(not 0.0 <= r <= 0.9 for r in self.ratios):
            raise SequenceError("sweep ratios must lie in [0, 0.9]")
        if self.trials < 1:
            raise SequenceError("need at least one trial")


@dataclass(frozen=True)
class SweepResult:
    """Mean |residual| per (ratio, method), averaged over trials."""

    ratios: np.ndarray
    timecorr: np.ndarray
    rap1: np.ndarray
    rap2: np.ndarray
    rap3: np.ndarray

    CSV_HEADER = "ratio,timecorr,rap1,rap2,rap3"

    def rows(self):
        return list(zip(self.ratios, self.timecorr, self.rap1, self.rap2, self.rap3))

    def write_csv(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.CSV_HEADER + "\n")
            for row in self.rows():
                fh.write(",".join(f"{v:.10g}" for v in row) + "\n")


def run_magnitude_sweep(cfg: SweepConfig = SweepConfig()) -> SweepResult:
    """Measure mean residual magnitudes over the configured ratio grid."""
    configs = [default_config(p) for p in (1, 2, 3)]
    totals = np.zeros((len(cfg.ratios), 4))
    for ri, ratio in enumerate(cfg.ratios):
        tc_mode = (Adaptive(cfg.adaptive_eps) if ratio < cfg.adaptive_cutoff
                   else FullSequence())
        for trial in range(cfg.trials):
            seq, _ = generate_ratio(ratio, cfg.seq_len,
                                    NormalizationMode.MEAN_MAGNITUDE,
                                    derive_seed(cfg.seed, ri, trial))
            totals[ri, 0] += mean_abs(tc_encode(seq, tc_mode).residuals)
            for col, config in enumerate(configs, start=1):
                totals[ri, col] += mean_abs(rap_encode(seq, config).residuals)
    means = totals / cfg.trials
    return SweepResult(np.asarray(cfg.ratios, dtype=np.float64),
                       means[:, 0], means[:, 1], means[:, 2], means[:, 3])


@dataclass(frozen=True)
class SpectrumTable:
    """Named magnitude-spectrum series over a shared frequency axis."""

    freqs: np.ndarray
    series: dict[str, np.ndarray] = field(default_factory=dict)

    def write_csv(self, path):
        names = list(self.series)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(",".join(["freq", *names]) + "\n")
            cols = [self.series[n] for n in names]
            for i, f in enumerate(self.freqs):
                vals = ",".join(f"{c[i]:.8g}" for c in cols)
                fh.write(f"{f:.8g},{vals}\n")


def run_spectrum_experiment(seed: int = 0, seq_len: int = 262144):
    """Residual spectra tables; returns (timecorr_table, rap_table).

    The time-correlation table holds the 0.8-band original spectrum and
    full-sequence-correlation residual spectra for 0.2/0.5/0.8 bands.
    The residual-feedback table holds the 0.5-band original spectrum and
    the 1/2/3-pass residual spectra (2- and 3-pass smoothed with a
    10-bin moving mean).  All sequences are power-normalized and every
    spectrum is scaled back by its sequence's normalization, so occupied
    original bins read 1.0.
    """
    seqs, norms = {}, {}
    for i, bw in enumerate((0.2, 0.5, 0.8)):
        seqs[bw], norms[bw] = generate_ratio(bw, seq_len, NormalizationMode.RMS_POWER,
                                             derive_seed(seed, i))

    def spec(values, bw):
        return magnitude_spectrum(values, norms[bw]).mags

    freqs = magnitude_spectrum(seqs[0.8], norms[0.8]).freqs
    tc_table = SpectrumTable(freqs, {
        "orig_bw80": spec(seqs[0.8], 0.8),
        "timecorr_residual_bw20": spec(tc_encode(seqs[0.2]).residuals, 0.2),
        "timecorr_residual_bw50": spec(tc_encode(seqs[0.5]).residuals, 0.5),
        "timecorr_residual_bw80": spec(tc_encode(seqs[0.8]).residuals, 0.8),
    })

    half = seqs[0.5]
    rap_specs = {
        p: spec(rap_encode(half, default_config(p)).residuals, 0.5) for p in (1, 2, 3)
    }
    rap_table = SpectrumTable(freqs, {
        "orig_bw50": spec(half, 0.5),
        "rap1_residual": rap_specs[1],
        "rap2_residual_smoothed": moving_mean(rap_specs[2], 10),
        "rap3_residual_smoothed": moving_mean(rap_specs[3], 10),
    })
    return tc_table, rap_table
