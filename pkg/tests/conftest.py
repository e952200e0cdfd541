import numpy as np
import pytest

from iqpred import NormalizationMode, generate_ratio


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def white_noise(n, seed):
    """Complex white noise, unit-ish scale, no zeros."""
    g = np.random.default_rng(seed)
    return (g.standard_normal(n) + 1j * g.standard_normal(n)).astype(np.complex128)


def bandlimited(ratio, n, seed, mode=NormalizationMode.MEAN_MAGNITUDE):
    seq, _ = generate_ratio(ratio, n, mode, seed)
    return seq


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion."""
    results = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance" not in nodeid:
                continue
            name = nodeid.split("::")[-1]
            if outcome == "passed" and results.get(name):
                continue
            results[name] = outcome if outcome != "error" else "failed"
    if not results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name in sorted(results):
        status = "PASS" if results[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] {name}")
