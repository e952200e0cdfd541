"""Raw I/Q file formats and the plain-text metadata sidecar.

Sample files come in two flavors:

* ``cf32`` — interleaved little-endian 32-bit IEEE-754 floats, I then Q,
  no header (the common raw-capture convention).
* ``csv``  — two numeric columns with a one-line ``re,im`` header.

Residual files use the same formats.  A residual file alone is not
decodable; the sidecar carries the method identity and every parameter
the decoder needs (``key=value`` lines, UTF-8).  Unknown keys are
rejected so a typo cannot silently change decode behavior.
"""

import cmath
import enum

import numpy as np

from .core import MalformedStreamError, SequenceError, as_samples
from .rap import RapConfig, RapStream, rap_decode
from .timecorr import Adaptive, FullSequence, TimeCorrStream, tc_decode


class SampleFormat(enum.Enum):
    CF32 = "cf32"
    CSV = "csv"


def write_samples(path, samples, fmt: SampleFormat = SampleFormat.CF32):
    arr = as_samples(samples)
    if fmt is SampleFormat.CF32:
        arr.astype("<c8").tofile(path)
    elif fmt is SampleFormat.CSV:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("re,im\n")
            for z in arr:
                fh.write(f"{float(z.real)!r},{float(z.imag)!r}\n")
    else:
        raise TypeError(f"unknown sample format: {fmt!r}")


def read_samples(path, fmt: SampleFormat = SampleFormat.CF32) -> np.ndarray:
    if fmt is SampleFormat.CF32:
        raw = np.fromfile(path, dtype=np.uint8)
        if raw.size == 0 or raw.size % 8:
            raise SequenceError(f"{path}: not a whole number of cf32 samples")
        return as_samples(raw.view("<c8").astype(np.complex128))
    if fmt is SampleFormat.CSV:
        try:
            cols = np.loadtxt(path, dtype=np.float64, delimiter=",", skiprows=1, ndmin=2)
        except ValueError as exc:
            raise SequenceError(f"{path}: malformed sample CSV ({exc})") from None
        if cols.ndim != 2 or cols.shape[1] != 2:
            raise SequenceError(f"{path}: expected two numeric columns")
        return as_samples(cols[:, 0] + 1j * cols[:, 1])
    raise TypeError(f"unknown sample format: {fmt!r}")


# every key the sidecar may contain
_META_KEYS = frozenset(
    {"method", "passes", "rotate", "quant", "timecorr_re", "timecorr_im",
     "tc_mode", "tc_eps"}
)


def _meta_lines(stream) -> list[str]:
    if isinstance(stream, np.ndarray):
        return ["method=bypass"]
    if isinstance(stream, TimeCorrStream):
        lines = ["method=timecorr"]
        if isinstance(stream.mode, FullSequence):
            lines.append("tc_mode=full")
            lines.append(f"timecorr_re={stream.timecorr.real!r}")
            lines.append(f"timecorr_im={stream.timecorr.imag!r}")
        else:
            lines.append("tc_mode=adaptive")
            lines.append(f"tc_eps={stream.mode.epsilon!r}")
        return lines
    if isinstance(stream, RapStream):
        cfg = stream.config
        lines = ["method=rap", f"passes={cfg.passes}"]
        for i, (eps, sat) in enumerate(zip(cfg.epsilons, cfg.thresholds), start=1):
            lines.append(f"eps.{i}={eps!r}")
            lines.append(f"sat.{i}={sat!r}")
        if cfg.rotation is not None:
            lines.append(f"rotate={cmath.phase(cfg.rotation)!r}")
        if cfg.quant_step is not None:
            lines.append(f"quant={cfg.quant_step!r}")
        return lines
    raise TypeError(f"cannot serialize stream of type {type(stream).__name__}")


def write_meta(path, stream):
    """Write the decode sidecar for an encoded stream (ndarray = bypass)."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(_meta_lines(stream)) + "\n")


def parse_meta(text: str) -> dict[str, str]:
    """Parse sidecar text into a key/value dict, rejecting unknown keys."""
    meta: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise MalformedStreamError(f"meta line {lineno}: expected key=value")
        if "." in key:
            base, _, idx = key.partition(".")
            if base not in {"eps", "sat"} or not idx.isdigit() or int(idx) < 1:
                raise MalformedStreamError(f"meta line {lineno}: unknown key {key!r}")
        elif key not in _META_KEYS:
            raise MalformedStreamError(f"meta line {lineno}: unknown key {key!r}")
        if key in meta:
            raise MalformedStreamError(f"meta line {lineno}: duplicate key {key!r}")
        meta[key] = value.strip()
    if "method" not in meta:
        raise MalformedStreamError("meta is missing the method key")
    return meta


def read_meta(path) -> dict[str, str]:
    with open(path, encoding="utf-8") as fh:
        return parse_meta(fh.read())


def _meta_float(meta, key) -> float:
    try:
        return float(meta[key])
    except KeyError:
        raise MalformedStreamError(f"meta is missing required key {key!r}") from None
    except ValueError:
        raise MalformedStreamError(f"meta key {key!r} is not a number") from None


def stream_from_meta(meta: dict[str, str], residuals):
    """Rebuild the decodable stream described by a parsed sidecar."""
    method = meta["method"]
    if method == "bypass":
        return as_samples(residuals)
    if method == "timecorr":
        mode = meta.get("tc_mode")
        if mode == "full":
            tc = complex(_meta_float(meta, "timecorr_re"), _meta_float(meta, "timecorr_im"))
            return TimeCorrStream(as_samples(residuals), FullSequence(), tc)
        if mode == "adaptive":
            return TimeCorrStream(as_samples(residuals), Adaptive(_meta_float(meta, "tc_eps")))
        raise MalformedStreamError(f"bad or missing tc_mode: {mode!r}")
    if method == "rap":
        try:
            passes = int(meta["passes"])
        except (KeyError, ValueError):
            raise MalformedStreamError("rap meta needs an integer passes key") from None
        if passes < 1:
            raise MalformedStreamError(f"rap meta has invalid passes={passes}")
        extra = {k for k in meta if k.startswith(("eps.", "sat."))
                 and int(k.split(".")[1]) > passes}
        if extra:
            raise MalformedStreamError(f"meta lists parameters beyond pass {passes}: {sorted(extra)}")
        eps = tuple(_meta_float(meta, f"eps.{i}") for i in range(1, passes + 1))
        sat = tuple(_meta_float(meta, f"sat.{i}") for i in range(1, passes + 1))
        rotation = None
        if "rotate" in meta:
            rotation = cmath.exp(1j * _meta_float(meta, "rotate"))
        quant = _meta_float(meta, "quant") if "quant" in meta else None
        try:
            config = RapConfig(eps, sat, rotation, quant)
        except SequenceError as exc:
            raise MalformedStreamError(f"invalid rap parameters in meta: {exc}") from None
        return RapStream(as_samples(residuals), config)
    raise MalformedStreamError(f"unknown method in meta: {method!r}")


def decode_stream(stream) -> np.ndarray:
    """Decode any stream built by :func:`stream_from_meta`."""
    if isinstance(stream, np.ndarray):
        return stream
    if isinstance(stream, TimeCorrStream):
        return tc_decode(stream)
    if isinstance(stream, RapStream):
        return rap_decode(stream)
    raise TypeError(f"cannot decode stream of type {type(stream).__name__}")
