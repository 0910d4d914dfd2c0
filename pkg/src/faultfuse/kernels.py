"""Hot numeric kernels, numba-jitted by default.

The wrapper-fitness surrogate is trained tens of thousands of times per
optimizer run and dominance checks are quadratic in the population, so both
get @njit kernels. Set FAULTFUSE_NO_NUMBA=1 to select the pure-numpy
fallbacks instead (same math, vectorized; results agree to float round-off,
not bit-for-bit). ``benchmarks/bench_kernels.py`` compares the two paths.
"""

from __future__ import annotations

import math
import os

import numpy as np


def _numba_requested() -> bool:
    flag = os.environ.get("FAULTFUSE_NO_NUMBA", "").strip().lower()
    return flag not in {"1", "true", "yes", "on"}


USING_NUMBA = False
if _numba_requested():
    try:
        from numba import njit

        USING_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        USING_NUMBA = False


# ---------------------------------------------------------------------------
# pure-numpy implementations
# ---------------------------------------------------------------------------

def _sigmoid_np(z):
    out = np.empty_like(z)
    pos = z >= 0.0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def logreg_fold_accuracy_np(x_train, y_train, weights, x_test, y_test, w0, b0, lr, epochs):
    """Train a sigmoid perceptron by weighted full-batch gradient descent,
    return plain accuracy on the held-out split."""
    w = w0.copy()
    b = b0
    n = x_train.shape[0]
    for _ in range(epochs):
        p = _sigmoid_np(x_train @ w + b)
        err = weights * (p - y_train) / n
        w = w - lr * (x_train.T @ err)
        b = b - lr * err.sum()
    logits = x_test @ w + b
    pred = (logits >= 0.0).astype(np.float64)
    return float((pred == y_test).mean())


def dominance_matrix_np(objectives):
    """Boolean matrix D with D[i, j] = point i Pareto-dominates point j (minimization)."""
    a = objectives[:, None, :]
    b = objectives[None, :, :]
    return np.logical_and((a <= b).all(axis=2), (a < b).any(axis=2))


# ---------------------------------------------------------------------------
# numba kernels (explicit loops; identical math)
# ---------------------------------------------------------------------------

if USING_NUMBA:

    @njit(cache=True)
    def _sigmoid_scalar(z):
        if z >= 0.0:
            return 1.0 / (1.0 + math.exp(-z))
        ez = math.exp(z)
        return ez / (1.0 + ez)

    @njit(cache=True)
    def _logreg_fold_accuracy_nb(x_train, y_train, weights, x_test, y_test, w0, b0, lr, epochs):
        n, d = x_train.shape
        w = w0.copy()
        b = b0
        gw = np.empty(d)
        for _ in range(epochs):
            for j in range(d):
                gw[j] = 0.0
            gb = 0.0
            for i in range(n):
                z = b
                for j in range(d):
                    z += x_train[i, j] * w[j]
                err = weights[i] * (_sigmoid_scalar(z) - y_train[i]) / n
                gb += err
                for j in range(d):
                    gw[j] += err * x_train[i, j]
            for j in range(d):
                w[j] -= lr * gw[j]
            b -= lr * gb
        correct = 0
        m = x_test.shape[0]
        for i in range(m):
            z = b
            for j in range(d):
                z += x_test[i, j] * w[j]
            pred = 1.0 if z >= 0.0 else 0.0
            if pred == y_test[i]:
                correct += 1
        return correct / m

    @njit(cache=True)
    def _dominance_matrix_nb(objectives):
        n, m = objectives.shape
        out = np.zeros((n, n), dtype=np.bool_)
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                not_worse = True
                strictly_better = False
                for k in range(m):
                    if objectives[i, k] > objectives[j, k]:
                        not_worse = False
                        break
                    if objectives[i, k] < objectives[j, k]:
                        strictly_better = True
                out[i, j] = not_worse and strictly_better
        return out

    def logreg_fold_accuracy(x_train, y_train, weights, x_test, y_test, w0, b0, lr, epochs):
        return _logreg_fold_accuracy_nb(
            np.ascontiguousarray(x_train, dtype=np.float64),
            np.ascontiguousarray(y_train, dtype=np.float64),
            np.ascontiguousarray(weights, dtype=np.float64),
            np.ascontiguousarray(x_test, dtype=np.float64),
            np.ascontiguousarray(y_test, dtype=np.float64),
            np.ascontiguousarray(w0, dtype=np.float64),
            float(b0),
            float(lr),
            int(epochs),
        )

    def dominance_matrix(objectives):
        return _dominance_matrix_nb(np.ascontiguousarray(objectives, dtype=np.float64))

else:
    logreg_fold_accuracy = logreg_fold_accuracy_np
    dominance_matrix = dominance_matrix_np
