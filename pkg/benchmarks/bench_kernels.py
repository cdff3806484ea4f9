#!/usr/bin/env python3
"""Benchmark the compiled gate kernels against the numpy fallback.

Times the individual amplitude primitives and a realistic QAOA workload
(one full gradient step on a 6-vertex MaxCut instance) on both backends.

Usage:
    python benchmarks/bench_kernels.py [--qubits 6 12 18] [--repeats 200]
"""
import argparse
import time

import numpy as np


def load_backends():
    from qforge import _kernels_py
    backends = [("python", _kernels_py)]
    try:
        from qforge import _kernels
        backends.insert(0, ("cython", _kernels))
    except ImportError:
        print("compiled kernels not built; benchmarking the fallback only")
    return backends


def random_amps(n, seed=0):
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return np.ascontiguousarray(amps / np.linalg.norm(amps))


def time_call(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter_ns()
        fn()
        best = min(best, time.perf_counter_ns() - t0)
    return best


def bench_primitives(backends, qubits, repeats):
    cases = {
        "apply_2x2": lambda mod, a, n: mod.apply_2x2(
            a, n // 2, 0.6, 0.8j, 0.8j, 0.6),
        "apply_cnot": lambda mod, a, n: mod.apply_cnot(a, 0, n - 1),
        "parity_phase": lambda mod, a, n: mod.apply_parity_phase(
            a, (1 << n) - 1, 0.37),
        "rx_all": lambda mod, a, n: mod.apply_rx_all(a, n, -0.53),
    }
    header = f"{'primitive':<14}{'n':>4}" + "".join(
        f"{name:>14}" for name, _ in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for case_name, call in cases.items():
        for n in qubits:
            row = f"{case_name:<14}{n:>4}"
            times = []
            for _, mod in backends:
                a = random_amps(n)
                ns = time_call(lambda: call(mod, a, n), repeats)
                times.append(ns)
                row += f"{ns / 1e3:>12.2f}us"
            if len(times) == 2:
                row += f"{times[1] / times[0]:>9.1f}x"
            print(row)


def bench_gradient_step(repeats):
    """One exact-gradient evaluation on a seeded 6-vertex instance."""
    import qforge
    from qforge import kernels

    g = qforge.erdos_renyi(6, 0.5, 1)
    model = qforge.maxcut_ising(g)
    params = qforge.linear_ramp_params(10, 7.5)

    results = []
    for label in ("cython", "python"):
        impl = None
        if label == "cython":
            try:
                from qforge import _kernels as impl
            except ImportError:
                continue
        else:
            from qforge import _kernels_py as impl
        saved = {name: getattr(kernels, name) for name in
                 ("apply_2x2", "apply_diag1", "apply_cnot",
                  "apply_parity_phase", "apply_masked_phase", "apply_rx_all")}
        for name in saved:
            setattr(kernels, name, getattr(impl, name))
        try:
            t0 = time.perf_counter()
            for _ in range(repeats):
                qforge.qaoa_gradient_per_gate(model, params, qforge.x_mixer(),
                                              bound=float(g.n_edges))
            elapsed = (time.perf_counter() - t0) / repeats
            results.append((label, elapsed))
        finally:
            for name, fn in saved.items():
                setattr(kernels, name, fn)
    print("\nfull gradient step (n=6, p=10, per-gate shifts):")
    for label, elapsed in results:
        print(f"  {label:<8} {elapsed * 1e3:8.2f} ms")
    if len(results) == 2:
        print(f"  speedup  {results[1][1] / results[0][1]:8.1f} x")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--qubits", type=int, nargs="+", default=[6, 12, 18])
    parser.add_argument("--repeats", type=int, default=200)
    args = parser.parse_args()
    backends = load_backends()
    bench_primitives(backends, args.qubits, args.repeats)
    bench_gradient_step(max(3, args.repeats // 20))


if __name__ == "__main__":
    main()
