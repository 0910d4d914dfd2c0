"""Condense a Pareto archive of feature subsets into one ordered weighted set.

Voting tallies how often each feature appears across the archive's selected
subsets and keeps the most frequent ones; weighting scales each survivor by
its archive selection frequency, normalized so the mean weight is 1. The
result feeds the neural rankers as column scale factors.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .errors import EmptyBallotsError, EmptySelectionError
from .features import FeatureMatrix
from .selection.archive import ParetoArchive


@dataclass(frozen=True)
class FusedFeatureSet:
    """Feature ids with positive weights, sorted by weight descending (ties by id)."""

    entries: tuple[tuple[int, float], ...]

    def __post_init__(self):
        ids = [fid for fid, _ in self.entries]
        assert len(ids) == len(set(ids)), "duplicate feature id in fused set"
        assert all(w > 0 for _, w in self.entries), "fused weights must be positive"

    def ids(self) -> list[int]:
        return [fid for fid, _ in self.entries]

    def weight_of(self, fid: int) -> float:
        for f, w in self.entries:
            if f == fid:
                return w
        raise KeyError(fid)

    def family_weights(self, matrix: FeatureMatrix) -> dict[str, float]:
        totals: dict[str, float] = {}
        for fid, w in self.entries:
            fam = matrix.families[fid]
            totals[fam] = totals.get(fam, 0.0) + w
        return totals


def vote(subsets: list[set[int]], keep: int) -> set[int]:
    """Keep the ``keep`` most frequent feature ids; ties break toward lower id."""
    if not subsets or any(not s for s in subsets):
        raise EmptyBallotsError("voting needs non-empty ballots")
    if keep < 1:
        raise EmptyBallotsError(f"keep must be >= 1, got {keep}")
    tally = Counter()
    for subset in subsets:
        tally.update(subset)
    ranked = sorted(tally.items(), key=lambda kv: (-kv[1], kv[0]))
    return {fid for fid, _ in ranked[:keep]}


def selection_frequencies(archive: ParetoArchive) -> dict[int, float]:
    n = len(archive.members)
    counts = Counter()
    for member in archive.members:
        counts.update(int(i) for i in member.bits.nonzero()[0])
    return {fid: c / n for fid, c in counts.items()}


def weigh(selected: set[int], archive: ParetoArchive) -> FusedFeatureSet:
    """Weight = archive selection frequency, scaled so the mean over the set is 1."""
    if not selected:
        raise EmptySelectionError("no features to weigh")
    if not archive.members:
        raise EmptySelectionError("archive is empty")
    freq = selection_frequencies(archive)
    raw = {fid: freq.get(fid, 0.0) for fid in selected}
    positive = {fid: f for fid, f in raw.items() if f > 0}
    if not positive:
        raise EmptySelectionError("selected features never appear in the archive")
    mean = sum(positive.values()) / len(positive)
    entries = sorted(
        ((fid, f / mean) for fid, f in positive.items()),
        key=lambda kv: (-kv[1], kv[0]),
    )
    return FusedFeatureSet(tuple(entries))


def default_keep(n_columns: int) -> int:
    return math.ceil(n_columns / 3)


def fuse(archive: ParetoArchive, keep: int | None = None) -> FusedFeatureSet:
    """Vote over the archive members' subsets, then weigh the survivors."""
    if not archive.members:
        raise EmptyBallotsError("archive is empty")
    ballots = [set(int(i) for i in m.bits.nonzero()[0]) for m in archive.members]
    width = archive.members[0].bits.shape[0]
    kept = vote(ballots, keep if keep is not None else default_keep(width))
    return weigh(kept, archive)


def save_fused(fused: FusedFeatureSet, matrix: FeatureMatrix, path) -> Path:
    out = Path(path)
    rows = [
        {"feature": matrix.names[fid], "family": matrix.families[fid], "weight": w}
        for fid, w in fused.entries
    ]
    out.write_text(json.dumps(rows, indent=2) + "\n", encoding="utf-8", newline="\n")
    return out


def load_fused(path, matrix: FeatureMatrix) -> FusedFeatureSet:
    rows = json.loads(Path(path).read_text(encoding="utf-8"))
    entries = tuple(
        (matrix.names.index(row["feature"]), float(row["weight"])) for row in rows
    )
    return FusedFeatureSet(entries)
