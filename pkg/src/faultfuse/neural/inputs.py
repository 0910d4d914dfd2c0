"""Build model inputs from the fused feature set.

Fused weights scale the normalized feature columns. The perceptron collapses
each family to its weight-weighted mean (three inputs); the recurrent model
sees one time step per family (spectrum, mutation, text order), padded to the
largest family's width with the statement's mean over that family.
"""

from __future__ import annotations

import numpy as np

from ..features import MBFL, SBFL, TBFL, FeatureMatrix
from ..fusion import FusedFeatureSet

FAMILY_ORDER = (SBFL, MBFL, TBFL)


def _family_entries(matrix: FeatureMatrix, fused: FusedFeatureSet):
    grouped = {fam: [] for fam in FAMILY_ORDER}
    for fid, weight in fused.entries:
        grouped[matrix.families[fid]].append((fid, weight))
    return grouped


def build_mlp_inputs(matrix: FeatureMatrix, fused: FusedFeatureSet,
                     concat: bool = False) -> np.ndarray:
    """(statements, 3) family aggregates, or the raw weighted columns when concat."""
    if concat:
        ids = fused.ids()
        weights = np.array([w for _, w in fused.entries])
        return matrix.values[:, ids] * weights
    grouped = _family_entries(matrix, fused)
    n = matrix.values.shape[0]
    out = np.zeros((n, len(FAMILY_ORDER)))
    for col, fam in enumerate(FAMILY_ORDER):
        entries = grouped[fam]
        if not entries:
            continue
        ids = [fid for fid, _ in entries]
        weights = np.array([w for _, w in entries])
        out[:, col] = (matrix.values[:, ids] * weights).sum(axis=1) / weights.sum()
    return out


def build_sequences(matrix: FeatureMatrix, fused: FusedFeatureSet) -> np.ndarray:
    """(statements, 3 steps, n) sequences; n is the widest family's entry count."""
    grouped = _family_entries(matrix, fused)
    width = max(len(entries) for entries in grouped.values())
    n = matrix.values.shape[0]
    seqs = np.zeros((n, len(FAMILY_ORDER), width))
    for step, fam in enumerate(FAMILY_ORDER):
        entries = grouped[fam]
        if not entries:
            continue
        ids = [fid for fid, _ in entries]
        weights = np.array([w for _, w in entries])
        block = matrix.values[:, ids] * weights
        seqs[:, step, : len(entries)] = block
        if len(entries) < width:
            pad = block.mean(axis=1, keepdims=True)
            seqs[:, step, len(entries):] = pad
    return seqs
