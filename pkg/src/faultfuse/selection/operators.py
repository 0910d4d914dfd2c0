"""Shared binary-genome machinery: crossover, fitness-scaled mutation,
dominance, non-dominated sorting, and crowding distance."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import kernels
from ..errors import LengthMismatchError


@dataclass
class Chromosome:
    bits: np.ndarray                      # uint8 selection mask
    objectives: np.ndarray | None = None  # cached (3,) vector, minimized

    def key(self) -> tuple:
        return tuple(int(b) for b in self.bits)


def random_bits(length: int, rng) -> np.ndarray:
    return (rng.random(length) < 0.5).astype(np.uint8)


def repair_empty(bits: np.ndarray, rng) -> np.ndarray:
    """The all-zero genome selects nothing; set one uniformly random bit."""
    if bits.any():
        return bits
    out = bits.copy()
    out[int(rng.integers(0, bits.shape[0]))] = 1
    return out


def uniform_crossover(p1: np.ndarray, p2: np.ndarray, rng) -> tuple[np.ndarray, np.ndarray]:
    """Per-locus exchange with probability 1/2; children take complementary parents."""
    if p1.shape != p2.shape:
        raise LengthMismatchError(f"genome lengths differ: {p1.shape} vs {p2.shape}")
    take_first = rng.random(p1.shape[0]) < 0.5
    c1 = np.where(take_first, p1, p2).astype(np.uint8)
    c2 = np.where(take_first, p2, p1).astype(np.uint8)
    return c1, c2


def mutation_probability(f_i: float, f_max: float, f_min: float) -> float:
    """Fitness-scaled flip probability: worst fitness mutates hardest."""
    if f_max == f_min:
        return 0.5
    return (f_max - f_i) / (f_max - f_min)


def fitness_scaled_mutation(
    bits: np.ndarray, f_i: float, f_max: float, f_min: float, rng, ceiling: float = 1.0
) -> np.ndarray:
    p_m = ceiling * mutation_probability(f_i, f_max, f_min)
    flip = rng.random(bits.shape[0]) < p_m
    return np.where(flip, 1 - bits, bits).astype(np.uint8)


def dominates(a: np.ndarray, b: np.ndarray) -> bool:
    return bool(np.all(a <= b) and np.any(a < b))


def non_dominated_sort(objectives: np.ndarray) -> list[list[int]]:
    """Fast non-dominated sort; fronts hold ascending member indices."""
    n = objectives.shape[0]
    dom = kernels.dominance_matrix(objectives)
    dominated_by = dom.sum(axis=0)  # how many points dominate i
    fronts: list[list[int]] = []
    remaining = dominated_by.astype(np.int64)
    assigned = np.zeros(n, dtype=bool)
    while not assigned.all():
        current = np.flatnonzero(~assigned & (remaining == 0))
        fronts.append([int(i) for i in current])
        assigned[current] = True
        remaining = remaining - dom[current].sum(axis=0)
    return fronts


def ranks_from_fronts(fronts: list[list[int]], n: int) -> np.ndarray:
    ranks = np.empty(n, dtype=np.int64)
    for r, front in enumerate(fronts):
        ranks[front] = r
    return ranks


def crowding_distance(objectives: np.ndarray) -> np.ndarray:
    """Per-member crowding distance over one front; boundaries are infinite.

    Objectives whose extent is zero contribute nothing.
    """
    n, m = objectives.shape
    dist = np.zeros(n)
    if n <= 2:
        return np.full(n, np.inf)
    for j in range(m):
        order = np.argsort(objectives[:, j], kind="stable")
        values = objectives[order, j]
        span = values[-1] - values[0]
        dist[order[0]] = np.inf
        dist[order[-1]] = np.inf
        if span <= 0:
            continue
        gaps = (values[2:] - values[:-2]) / span
        interior = order[1:-1]
        finite = np.isfinite(dist[interior])
        dist[interior[finite]] += gaps[finite]
    return dist
