"""Command-line front end.

Subcommands: generate, encode, decode, analyze, sweep, spectra, select.
Sample files default to raw cf32 (interleaved little-endian float32 I/Q);
pass ``--format csv`` for two-column text.  ``encode`` writes a plain-text
``key=value`` sidecar next to the residual file; ``decode`` needs both.
"""

import argparse
import cmath
import sys
from pathlib import Path

from .core import NormalizationMode, SequenceError, mean_abs
from .generate import generate_ratio
from .iqfile import (
    SampleFormat,
    decode_stream,
    read_meta,
    read_samples,
    stream_from_meta,
    write_meta,
    write_samples,
)
from .rap import RapConfig, default_config, rap_encode
from .select import Method, encode_with, estimate_bandwidth, pick_best, select_by_bandwidth
from .spectrum import magnitude_spectrum
from .sweep import SweepConfig, run_magnitude_sweep, run_spectrum_experiment
from .timecorr import Adaptive, FullSequence, tc_encode

_NORM = {"mag": NormalizationMode.MEAN_MAGNITUDE, "power": NormalizationMode.RMS_POWER}


def _add_format(parser):
    parser.add_argument("--format", choices=["cf32", "csv"], default="cf32",
                        help="sample file format (default cf32)")


def _fmt(args) -> SampleFormat:
    return SampleFormat(args.format)


def _cmd_generate(args) -> int:
    seq, normalization = generate_ratio(args.ratio, args.len, _NORM[args.norm], args.seed)
    write_samples(args.out, seq, _fmt(args))
    print(f"wrote {len(seq)} samples to {args.out}")
    print(f"normalization={normalization!r}")
    return 0


def _rap_config_from_args(passes: int, args) -> RapConfig:
    base = default_config(passes)
    eps, sat = base.epsilons, base.thresholds
    if (args.eps is None) != (args.sat is None):
        raise SequenceError("--eps and --sat must be given together")
    if args.eps is not None:
        if len(args.eps) != passes or len(args.sat) != passes:
            raise SequenceError(f"need exactly {passes} values for --eps and --sat")
        eps, sat = tuple(args.eps), tuple(args.sat)
    rotation = cmath.exp(1j * args.rotate) if args.rotate is not None else None
    return RapConfig(eps, sat, rotation, args.quant)


def _cmd_encode(args) -> int:
    seq = read_samples(args.infile, _fmt(args))
    method = args.method
    if method == "auto-best":
        kind, stream, score = pick_best(seq)
        print(f"auto-best picked {kind.value} (mean_abs={score:.6g})")
    elif method == "auto-bw":
        bw = estimate_bandwidth(seq)
        kind = select_by_bandwidth(bw)
        stream, _ = encode_with(seq, kind)
        print(f"auto-bw picked {kind.value} (bandwidth={bw:.4f})")
    elif method == "timecorr":
        if args.eps is not None and len(args.eps) != 1:
            raise SequenceError("timecorr takes a single --eps value")
        mode = Adaptive(args.eps[0]) if args.eps else FullSequence()
        stream = tc_encode(seq, mode)
    else:
        stream = rap_encode(seq, _rap_config_from_args(int(method[3:]), args))
    residuals = stream if not hasattr(stream, "residuals") else stream.residuals
    write_samples(args.out, residuals, _fmt(args))
    write_meta(args.meta, stream)
    print(f"encoded {len(residuals)} samples -> {args.out} (meta: {args.meta})")
    return 0


def _cmd_decode(args) -> int:
    residuals = read_samples(args.infile, _fmt(args))
    stream = stream_from_meta(read_meta(args.meta), residuals)
    write_samples(args.out, decode_stream(stream), _fmt(args))
    print(f"decoded {len(residuals)} samples -> {args.out}")
    return 0


def _cmd_analyze(args) -> int:
    spec = magnitude_spectrum(read_samples(args.infile, _fmt(args)))
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("freq,magnitude\n")
        for f, m in zip(spec.freqs, spec.mags):
            fh.write(f"{f:.8g},{m:.8g}\n")
    print(f"wrote spectrum of {len(spec.mags)} bins to {args.out}")
    return 0


def _cmd_sweep(args) -> int:
    cfg = SweepConfig(trials=args.trials, seq_len=args.len, seed=args.seed)
    run_magnitude_sweep(cfg).write_csv(args.out)
    print(f"wrote sweep table ({len(cfg.ratios)} ratios x {cfg.trials} trials) to {args.out}")
    return 0


def _cmd_spectra(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    tc_table, rap_table = run_spectrum_experiment(args.seed, args.len)
    tc_path = out_dir / "timecorr_residual_spectra.csv"
    rap_path = out_dir / "rap_residual_spectra.csv"
    tc_table.write_csv(tc_path)
    rap_table.write_csv(rap_path)
    print(f"wrote {tc_path} and {rap_path}")
    return 0


def _cmd_select(args) -> int:
    seq = read_samples(args.infile, _fmt(args))
    kind, _, score = pick_best(seq)
    print(f"pick-best: {kind.value} mean_abs={score:.6g}")
    bw = estimate_bandwidth(seq)
    print(f"by-bandwidth: {select_by_bandwidth(bw).value} bandwidth={bw:.4f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iqpred",
        description="Prediction front-end for lossless compression of complex I/Q sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a band-limited test sequence")
    p.add_argument("--ratio", type=float, required=True,
                   help="occupied fraction of the sampling bandwidth, 0..0.9")
    p.add_argument("--len", type=int, default=65536, help="sequence length (power of two)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--norm", choices=["mag", "power"], default="mag",
                   help="normalize mean magnitude or RMS power to 1")
    p.add_argument("--out", required=True)
    _add_format(p)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("encode", help="encode samples into a residual stream")
    p.add_argument("--method", required=True,
                   choices=["timecorr", "rap1", "rap2", "rap3", "auto-best", "auto-bw"])
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--meta", required=True, help="sidecar path for decode parameters")
    p.add_argument("--eps", type=float, nargs="+",
                   help="per-pass damping factors (timecorr: single adaptive factor)")
    p.add_argument("--sat", type=float, nargs="+", help="per-pass prediction magnitude caps")
    p.add_argument("--rotate", type=float,
                   help="prediction rotation phase in radians (rap methods)")
    p.add_argument("--quant", type=float, help="prediction quantization step (rap methods)")
    _add_format(p)
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("decode", help="reconstruct samples from residuals + sidecar")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--meta", required=True)
    p.add_argument("--out", required=True)
    _add_format(p)
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("analyze", help="write the magnitude spectrum of a sample file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    _add_format(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("sweep", help="mean residual magnitude vs bandwidth ratio")
    p.add_argument("--out", required=True)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--len", type=int, default=65536)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("spectra", help="residual spectra tables")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--len", type=int, default=262144)
    p.set_defaults(func=_cmd_spectra)

    p = sub.add_parser("select", help="report which method suits a sample file")
    p.add_argument("--in", dest="infile", required=True)
    _add_format(p)
    p.set_defaults(func=_cmd_select)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SequenceError, OSError) as exc:
        print(f"iqpred: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
