#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--len N] [--repeats R]
"""

import argparse
import time

import numpy as np

from iqpred import _kernels_py
from iqpred.generate import GeneratorSpec, generate

try:
    from iqpred import _kernels as compiled
except ImportError:
    compiled = None

EPS3 = np.array([0.015, 0.03, 0.01])
SAT3 = np.array([2.4, 1.4, 0.8])


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def workloads(seq):
    rap_args = (seq, EPS3, SAT3, complex(seq[0]), 1.0 + 0j, False, 0.0, False)

    def make(mod):
        residuals = mod.rap_encode(*rap_args)
        adaptive = mod.tc_encode_adaptive(seq, 0.01)
        return {
            "rap3 encode": lambda: mod.rap_encode(*rap_args),
            "rap3 decode": lambda: mod.rap_decode(residuals, *rap_args[1:]),
            "adaptive tc encode": lambda: mod.tc_encode_adaptive(seq, 0.01),
            "adaptive tc decode": lambda: mod.tc_decode_adaptive(adaptive, 0.01),
            "const-pred decode": lambda: mod.tc_decode_const(seq, 0.9 + 0.05j),
        }

    return make


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--len", type=int, default=65536, help="sequence length (power of two)")
    parser.add_argument("--repeats", type=int, default=5, help="best-of repeats per timing")
    args = parser.parse_args()

    seq, _ = generate(GeneratorSpec(0.25, args.len, seed=1))
    make = workloads(seq)
    python_runs = make(_kernels_py)

    print(f"sequence length {args.len}, best of {args.repeats}\n")
    header = f"{'kernel':<22} {'python':>12} {'compiled':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    compiled_runs = make(compiled) if compiled is not None else None
    for name, py_fn in python_runs.items():
        t_py = best_of(py_fn, args.repeats)
        if compiled_runs is None:
            print(f"{name:<22} {t_py * 1e3:>10.2f}ms {'n/a':>12} {'-':>9}")
            continue
        t_c = best_of(compiled_runs[name], args.repeats)
        print(f"{name:<22} {t_py * 1e3:>10.2f}ms {t_c * 1e3:>10.2f}ms {t_py / t_c:>8.1f}x")
    if compiled is None:
        print("\ncompiled extension not available; build it with: pip install -e .")


if __name__ == "__main__":
    main()
