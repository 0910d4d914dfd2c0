"""Bounded non-dominated archive with crowding-based truncation."""

from __future__ import annotations

import numpy as np

from .operators import Chromosome, crowding_distance, dominates


class ParetoArchive:
    """Stores mutually non-dominated chromosomes, at most ``capacity`` of them.

    Duplicated bitstrings are kept once. When the archive overflows, the
    member with the smallest crowding distance is evicted (recomputed after
    each eviction), so boundary members are never dropped.
    """

    def __init__(self, capacity: int):
        self.capacity = capacity
        self.members: list[Chromosome] = []

    def __len__(self) -> int:
        return len(self.members)

    def offer(self, candidate: Chromosome) -> bool:
        obj = candidate.objectives
        key = candidate.key()
        for m in self.members:
            if dominates(m.objectives, obj) or m.key() == key:
                return False
        self.members = [m for m in self.members if not dominates(obj, m.objectives)]
        self.members.append(candidate)
        while len(self.members) > self.capacity:
            self._evict_one()
        return True

    def extend(self, candidates) -> None:
        for c in candidates:
            self.offer(c)

    def objective_matrix(self) -> np.ndarray:
        return np.array([m.objectives for m in self.members], dtype=np.float64)

    def crowding(self) -> np.ndarray:
        if not self.members:
            return np.zeros(0)
        return crowding_distance(self.objective_matrix())

    def _evict_one(self) -> None:
        crowd = self.crowding()
        worst = np.min(crowd)
        candidates = [i for i, c in enumerate(crowd) if c == worst]
        # deterministic tie-break: evict the lexicographically largest genome
        victim = max(candidates, key=lambda i: self.members[i].key())
        del self.members[victim]

    def audit(self) -> bool:
        """True when no member dominates another (brute-force check)."""
        objs = self.objective_matrix()
        for i in range(len(self.members)):
            for j in range(len(self.members)):
                if i != j and dominates(objs[i], objs[j]):
                    return False
        return True
