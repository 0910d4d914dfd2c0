#!/usr/bin/env python3
"""Benchmark the numba kernels against their pure-numpy fallbacks.

The surrogate-training kernel runs once per objective evaluation (10^4+ times
per optimizer run), so its per-call cost dominates selection time.

Usage:
    python benchmarks/bench_kernels.py [--rows 30] [--cols 8] [--repeat 2000]
"""

import argparse
import time

import numpy as np

from faultfuse import kernels


def time_call(fn, args, repeat):
    fn(*args)  # warm-up (numba compiles here)
    start = time.perf_counter()
    for _ in range(repeat):
        fn(*args)
    return (time.perf_counter() - start) / repeat


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--rows", type=int, default=30)
    parser.add_argument("--cols", type=int, default=8)
    parser.add_argument("--repeat", type=int, default=2000)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    x_train = rng.random((args.rows, args.cols))
    y_train = (rng.random(args.rows) < 0.2).astype(float)
    weights = np.ones(args.rows)
    x_test = rng.random((max(args.rows // 5, 1), args.cols))
    y_test = (rng.random(x_test.shape[0]) < 0.2).astype(float)
    w0 = rng.uniform(-0.01, 0.01, args.cols)
    logreg_args = (x_train, y_train, weights, x_test, y_test, w0, 0.0, 0.5, 20)

    objectives = rng.random((200, 3))

    print(f"numba active: {kernels.USING_NUMBA}")
    rows = []
    numpy_logreg = time_call(kernels.logreg_fold_accuracy_np, logreg_args, args.repeat)
    numpy_dom = time_call(kernels.dominance_matrix_np, (objectives,), args.repeat)
    rows.append(("logreg_fold_accuracy", "numpy", numpy_logreg))
    rows.append(("dominance_matrix", "numpy", numpy_dom))
    if kernels.USING_NUMBA:
        jit_logreg = time_call(kernels.logreg_fold_accuracy, logreg_args, args.repeat)
        jit_dom = time_call(kernels.dominance_matrix, (objectives,), args.repeat)
        rows.append(("logreg_fold_accuracy", "numba", jit_logreg))
        rows.append(("dominance_matrix", "numba", jit_dom))
        rows.append(("logreg_fold_accuracy", "speedup", numpy_logreg / jit_logreg))
        rows.append(("dominance_matrix", "speedup", numpy_dom / jit_dom))

    print(f"{'kernel':24s} {'path':8s} per-call")
    for name, path, value in rows:
        if path == "speedup":
            print(f"{name:24s} {path:8s} {value:.1f}x")
        else:
            print(f"{name:24s} {path:8s} {value * 1e6:.1f} us")


if __name__ == "__main__":
    main()
