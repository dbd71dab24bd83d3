"""Benchmark the compiled RK4 kernel against the pure-Python twin.

Runs the standard dual-route workload (six configurations, four basis
initial states each) through both integrator backends on identical inputs
and reports per-run timing plus the worst population disagreement.

Usage:
    python benchmarks/bench_rk4.py [--t-max 50] [--steps 50001] [--repeat 1]
"""

import argparse
import time

import numpy as np

from su4rabi import _kernels_py
from su4rabi.cli import STANDARD_COUPLINGS
from su4rabi.frame import resonant_drive
from su4rabi.models import StateVector, catalog, row_of, to_row_order

try:
    from su4rabi import _kernels as _kernels_c
except ImportError:
    _kernels_c = None

OMEGA = (1.0, 2.0, 3.0)


def workload(t_max, steps):
    """Kernel-call argument sets for the standard 24-run sweep."""
    h = t_max / (steps - 1)
    runs = []
    for model in catalog():
        drive = resonant_drive(
            model, OMEGA, {tr: STANDARD_COUPLINGS[tr] for tr in model.allowed}
        )
        transitions = model.sorted_transitions()
        diag = np.ascontiguousarray(to_row_order(model.energies(OMEGA)), dtype=float)
        hi = np.array([row_of(a) for a, _ in transitions], dtype=np.int64)
        lo = np.array([row_of(b) for _, b in transitions], dtype=np.int64)
        kappa = np.array([drive.coupling[tr] for tr in transitions], dtype=float)
        freq = np.array([drive.field_freq[tr] for tr in transitions], dtype=float)
        for level in (1, 2, 3, 4):
            c0 = np.ascontiguousarray(
                to_row_order(StateVector.basis(level).amplitudes), dtype=complex
            )
            runs.append((model.id.value, level, diag, hi, lo, kappa, freq, c0, h))
    return runs


def run_backend(kernels, runs, steps, repeat):
    """Integrate every run ``repeat`` times; return (best total seconds, traces)."""
    traces = []
    best = float("inf")
    for _ in range(repeat):
        traces = []
        start = time.perf_counter()
        for _, _, diag, hi, lo, kappa, freq, c0, h in runs:
            pops = np.empty((steps, 4))
            c_out = np.empty(4, dtype=complex)
            kernels.rk4_trace(
                diag, hi, lo, kappa, freq, c0.copy(), 0.0, h, steps - 1, pops, c_out
            )
            traces.append(pops)
        best = min(best, time.perf_counter() - start)
    return best, traces


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--t-max", type=float, default=50.0)
    parser.add_argument("--steps", type=int, default=50001,
                        help="grid points per run, including t=0")
    parser.add_argument("--repeat", type=int, default=1,
                        help="repetitions per backend; the best total is reported")
    args = parser.parse_args()

    runs = workload(args.t_max, args.steps)
    n = len(runs)
    print(f"workload: {n} runs x {args.steps - 1} RK4 steps, t in [0, {args.t_max:g}]")

    pure_total, pure_traces = run_backend(_kernels_py, runs, args.steps, args.repeat)
    print(f"pure python : {pure_total:8.3f} s total, {pure_total / n * 1e3:8.2f} ms/run")

    if _kernels_c is None:
        print("compiled    : extension not built; nothing to compare")
        return

    c_total, c_traces = run_backend(_kernels_c, runs, args.steps, args.repeat)
    print(f"compiled    : {c_total:8.3f} s total, {c_total / n * 1e3:8.2f} ms/run")
    print(f"speedup     : {pure_total / c_total:8.1f} x")

    worst = max(
        float(np.abs(a - b).max()) for a, b in zip(pure_traces, c_traces)
    )
    print(f"agreement   : max |population difference| = {worst:.3e}")


if __name__ == "__main__":
    main()
