"""Wrapper fitness for feature subsets.

A chromosome is scored by training a sigmoid perceptron per cross-validation
fold on the selected feature columns and measuring held-out classification
accuracy. The objective vector, all minimized, is

  (1 - mean fold accuracy, population std of fold accuracies, selected/total)

The cardinality proxy keeps the cost objective deterministic; wall-clock
measurement is reported separately by the run accounting.
"""

from __future__ import annotations

import numpy as np

from .. import kernels
from ..corpus.folds import split_folds
from ..errors import EmptySelectionError
from .config import SurrogateConfig


class WrapperFitness:
    """Callable objective evaluator; counts every evaluation it performs."""

    def __init__(self, values: np.ndarray, labels: np.ndarray, seed: int,
                 config: SurrogateConfig | None = None):
        self.config = config or SurrogateConfig()
        self.values = np.ascontiguousarray(values, dtype=np.float64)
        self.labels = np.ascontiguousarray(labels, dtype=np.float64)
        self.seed = seed
        k = min(self.config.folds, self.values.shape[0])
        self.folds = split_folds(self.labels, k, seed)
        # one fixed full-width init vector per fold: a column keeps its init
        # weight whichever subset it appears in
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, 0xF01D])))
        self._init_w = rng.uniform(-0.01, 0.01, size=(k, self.values.shape[1]))
        self._init_b = rng.uniform(-0.01, 0.01, size=k)
        # balanced class weights per fold; faulty statements are rare, so an
        # unweighted fit would collapse to the majority class
        self._weights = []
        for train, _ in self.folds:
            y = self.labels[train]
            w = np.ones(y.shape[0])
            n_pos = (y == 1).sum()
            n_neg = y.shape[0] - n_pos
            if n_pos and n_neg:
                w[y == 1] = y.shape[0] / (2.0 * n_pos)
                w[y != 1] = y.shape[0] / (2.0 * n_neg)
            self._weights.append(w)
        self.evaluations = 0

    @property
    def n_columns(self) -> int:
        return self.values.shape[1]

    def fold_accuracies(self, bits: np.ndarray) -> np.ndarray:
        cols = np.flatnonzero(bits)
        if cols.size == 0:
            raise EmptySelectionError("chromosome selects no feature column")
        x = self.values[:, cols]
        accs = np.empty(len(self.folds))
        for f, (train, test) in enumerate(self.folds):
            accs[f] = kernels.logreg_fold_accuracy(
                x[train], self.labels[train], self._weights[f],
                x[test], self.labels[test],
                self._init_w[f, cols], self._init_b[f],
                self.config.learning_rate, self.config.epochs,
            )
        return accs

    def __call__(self, bits: np.ndarray) -> np.ndarray:
        accs = self.fold_accuracies(bits)
        acc = float(accs.mean())
        stability = float(np.sqrt(np.mean((accs - acc) ** 2)))
        cost = float(bits.sum()) / self.n_columns
        self.evaluations += 1
        return np.array([1.0 - acc, stability, cost])
