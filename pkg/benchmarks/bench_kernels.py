"""Benchmark the compiled measurement kernel against the NumPy fallback.

Reports per-call kernel timings and end-to-end discrimination throughput for
both backends.  Backends are swapped in-process by rebinding the kernel
functions (the public way to force the fallback is ``QCAUSAL_PURE=1``).

Usage: python benchmarks/bench_kernels.py [--calls N] [--scenarios N]
"""

import argparse
import time

import numpy as np

from qcausal import kernels, sampling
from qcausal.experiment import ExperimentConfig, run_experiment


def time_kernel(fn, args_list, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for args in args_list:
            fn(*args)
        best = min(best, time.perf_counter() - start)
    return best / len(args_list)


def bench_kernels(calls):
    rng = np.random.default_rng(0)
    common_args, causal_args = [], []
    for _ in range(calls):
        rho = sampling.random_density(rng)
        fe, fl = sampling.haar_unitary(rng), sampling.haar_unitary(rng)
        u = sampling.haar_unitary(rng)
        rho2 = np.eye(2, dtype=complex) / 2
        common_args.append((rho, fe, fl))
        causal_args.append((u, rho2, fe, fl))

    rows = []
    for name, impl in kernels.backends().items():
        t_common = time_kernel(impl.joint_probs_common, common_args)
        t_causal = time_kernel(impl.joint_probs_causal, causal_args)
        rows.append((name, t_common * 1e6, t_causal * 1e6))
    return rows


def bench_end_to_end(scenarios):
    cfg = ExperimentConfig(
        n_common=scenarios, n_causal=scenarios, shots_per_axis=200,
        mode="sampled", repeats=1, seed=0,
    )
    originals = (kernels.joint_probs_common, kernels.joint_probs_causal)
    rows = []
    try:
        for name, impl in kernels.backends().items():
            kernels.joint_probs_common = impl.joint_probs_common
            kernels.joint_probs_causal = impl.joint_probs_causal
            start = time.perf_counter()
            report = run_experiment(cfg)
            elapsed = time.perf_counter() - start
            rows.append((name, elapsed, 2 * scenarios / elapsed, report.failure_rate))
    finally:
        kernels.joint_probs_common, kernels.joint_probs_causal = originals
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--calls", type=int, default=20_000)
    parser.add_argument("--scenarios", type=int, default=1000, help="per kind")
    args = parser.parse_args()

    print(f"active backend: {kernels.backend()}")
    print(f"\nkernel micro-benchmark ({args.calls} calls):")
    print(f"{'backend':>10} {'common us/call':>16} {'causal us/call':>16}")
    micro = bench_kernels(args.calls)
    for name, tc, tk in micro:
        print(f"{name:>10} {tc:>16.2f} {tk:>16.2f}")

    print(f"\nend-to-end discrimination ({2 * args.scenarios} scenarios, 200 shots/axis):")
    print(f"{'backend':>10} {'seconds':>10} {'runs/s':>10} {'failure rate':>14}")
    e2e = bench_end_to_end(args.scenarios)
    for name, secs, rate, fail in e2e:
        print(f"{name:>10} {secs:>10.2f} {rate:>10.0f} {100 * fail:>13.2f}%")

    if len(micro) == 2:
        by_name = {name: (tc, tk) for name, tc, tk in micro}
        if "compiled" in by_name and "pure" in by_name:
            sc = by_name["pure"][0] / by_name["compiled"][0]
            sk = by_name["pure"][1] / by_name["compiled"][1]
            print(f"\nkernel speedup (pure/compiled): common {sc:.1f}x, causal {sk:.1f}x")


if __name__ == "__main__":
    main()
