"""Shared optimizer plumbing."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .archive import ParetoArchive


def member_rng(seed: int, generation: int, member: int) -> np.random.Generator:
    """Independent stream per (run seed, generation, member index)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, generation, member])))


@dataclass
class OptimizerResult:
    optimizer: str
    archive: ParetoArchive
    evaluation_count: int
    generations: int
    wall_clock_s: float | None = None


class _Stopwatch:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self._start = time.perf_counter() if enabled else 0.0

    def elapsed(self) -> float | None:
        if not self.enabled:
            return None
        return time.perf_counter() - self._start
