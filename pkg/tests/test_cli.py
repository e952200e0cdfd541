import subprocess
import sys

import numpy as np
import pytest

from iqpred import mean_abs
from iqpred.cli import main
from iqpred.iqfile import SampleFormat, read_meta, read_samples, write_samples
from tests.conftest import white_noise


def run(*args):
    return main([str(a) for a in args])


@pytest.fixture
def signal_file(tmp_path):
    path = tmp_path / "sig.cf32"
    assert run("generate", "--ratio", 0.5, "--len", 4096, "--seed", 3,
               "--out", path) == 0
    return path


def test_generate_writes_samples_and_normalization(tmp_path, capsys):
    path = tmp_path / "g.cf32"
    assert run("generate", "--ratio", 0.3, "--len", 1024, "--seed", 1,
               "--out", path) == 0
    out = capsys.readouterr().out
    assert "normalization=" in out
    assert len(read_samples(path)) == 1024


def test_generate_csv_format(tmp_path):
    path = tmp_path / "g.csv"
    assert run("generate", "--ratio", 0.2, "--len", 256, "--seed", 2,
               "--out", path, "--format", "csv") == 0
    assert len(read_samples(path, SampleFormat.CSV)) == 256


def test_encode_decode_roundtrip_within_float32(tmp_path, signal_file):
    res, meta, rec = tmp_path / "r.cf32", tmp_path / "r.meta", tmp_path / "rec.cf32"
    assert run("encode", "--method", "rap3", "--in", signal_file,
               "--out", res, "--meta", meta) == 0
    assert run("decode", "--in", res, "--meta", meta, "--out", rec) == 0
    a = read_samples(signal_file)
    b = read_samples(rec)
    # residuals pass through 32-bit storage, so expect float32-level error
    assert np.abs(a - b).max() <= 1e-6


def test_encode_each_method_roundtrips(tmp_path, signal_file):
    for method in ("timecorr", "rap1", "rap2", "auto-best", "auto-bw"):
        res = tmp_path / f"{method}.cf32"
        meta = tmp_path / f"{method}.meta"
        rec = tmp_path / f"{method}.rec.cf32"
        assert run("encode", "--method", method, "--in", signal_file,
                   "--out", res, "--meta", meta) == 0
        assert run("decode", "--in", res, "--meta", meta, "--out", rec) == 0
        err = np.abs(read_samples(signal_file) - read_samples(rec)).max()
        assert err <= 1e-6, method


def test_encode_adaptive_timecorr_flag(tmp_path, signal_file):
    res, meta = tmp_path / "r.cf32", tmp_path / "r.meta"
    assert run("encode", "--method", "timecorr", "--eps", 0.02,
               "--in", signal_file, "--out", res, "--meta", meta) == 0
    parsed = read_meta(meta)
    assert parsed["tc_mode"] == "adaptive"
    assert float(parsed["tc_eps"]) == 0.02


def test_auto_best_on_narrowband_records_timecorr(tmp_path):
    sig = tmp_path / "narrow.cf32"
    assert run("generate", "--ratio", 0.05, "--len", 16384, "--seed", 9,
               "--out", sig) == 0
    res, meta = tmp_path / "r.cf32", tmp_path / "r.meta"
    assert run("encode", "--method", "auto-best", "--in", sig,
               "--out", res, "--meta", meta) == 0
    assert read_meta(meta)["method"] == "timecorr"


def test_decode_with_tampered_epsilon_degrades(tmp_path, signal_file):
    res, meta, rec = tmp_path / "r.cf32", tmp_path / "r.meta", tmp_path / "bad.cf32"
    assert run("encode", "--method", "rap1", "--in", signal_file,
               "--out", res, "--meta", meta) == 0
    text = meta.read_text().replace("eps.1=0.007", "eps.1=0.3")
    meta.write_text(text)
    assert run("decode", "--in", res, "--meta", meta, "--out", rec) == 0
    err = mean_abs(read_samples(signal_file) - read_samples(rec))
    assert err > 0.1


def test_custom_rap_parameters_recorded(tmp_path, signal_file):
    res, meta = tmp_path / "r.cf32", tmp_path / "r.meta"
    assert run("encode", "--method", "rap2", "--eps", 0.01, 0.02,
               "--sat", 3.0, 2.0, "--rotate", 0.5, "--quant", "1e-6",
               "--in", signal_file, "--out", res, "--meta", meta) == 0
    parsed = read_meta(meta)
    assert parsed["passes"] == "2"
    assert float(parsed["eps.2"]) == 0.02
    assert float(parsed["rotate"]) == 0.5
    assert float(parsed["quant"]) == 1e-6


def test_eps_without_sat_fails(tmp_path, signal_file, capsys):
    res, meta = tmp_path / "r.cf32", tmp_path / "r.meta"
    assert run("encode", "--method", "rap1", "--eps", 0.01,
               "--in", signal_file, "--out", res, "--meta", meta) == 1
    assert "error" in capsys.readouterr().err


def test_analyze_writes_spectrum_csv(tmp_path, signal_file):
    out = tmp_path / "spec.csv"
    assert run("analyze", "--in", signal_file, "--out", out) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "freq,magnitude"
    assert len(lines) == 1 + 4096


def test_analyze_rejects_non_power_of_two(tmp_path, capsys):
    path = tmp_path / "odd.cf32"
    write_samples(path, white_noise(100, 1))
    assert run("analyze", "--in", path, "--out", tmp_path / "s.csv") == 1
    assert "power of two" in capsys.readouterr().err


def test_sweep_csv(tmp_path):
    out = tmp_path / "sweep.csv"
    assert run("sweep", "--out", out, "--trials", 1, "--len", 1024, "--seed", 1) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "ratio,timecorr,rap1,rap2,rap3"
    assert len(lines) == 1 + 19


def test_spectra_outputs(tmp_path):
    out_dir = tmp_path / "spectra"
    assert run("spectra", "--out-dir", out_dir, "--seed", 2, "--len", 4096) == 0
    assert (out_dir / "timecorr_residual_spectra.csv").exists()
    assert (out_dir / "rap_residual_spectra.csv").exists()


def test_select_reports_both_policies(signal_file, capsys):
    assert run("select", "--in", signal_file) == 0
    out = capsys.readouterr().out
    assert "pick-best:" in out
    assert "by-bandwidth:" in out
    assert "rap3" in out


def test_missing_file_fails_cleanly(tmp_path, capsys):
    assert run("select", "--in", tmp_path / "nope.cf32") == 1
    assert "error" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "iqpred", "--help"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "generate" in proc.stdout
