"""Stratified k-fold splitting of labeled statement instances."""

from __future__ import annotations

import numpy as np

from ..errors import TooFewInstancesError


def split_folds(labels, k: int, seed: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Partition instance indices into k (train, test) splits.

    Positives are dealt round-robin across folds first, negatives continue the
    same round-robin, so test-fold sizes differ by at most one and every fold
    holds a positive whenever there are at least k positives.
    """
    y = np.asarray(labels)
    n = y.shape[0]
    if k < 2:
        raise TooFewInstancesError(f"fold count must be >= 2, got {k}")
    if n < k:
        raise TooFewInstancesError(f"{n} instances cannot fill {k} folds")
    rng = np.random.Generator(np.random.PCG64(seed))
    pos = np.flatnonzero(y == 1)
    neg = np.flatnonzero(y != 1)
    rng.shuffle(pos)
    rng.shuffle(neg)
    order = np.concatenate([pos, neg])
    assignment = np.empty(n, dtype=np.int64)
    assignment[order] = np.arange(n) % k
    splits = []
    for fold in range(k):
        test = np.flatnonzero(assignment == fold)
        train = np.flatnonzero(assignment != fold)
        splits.append((train, test))
    return splits
