"""Binary multi-objective particle swarm over feature genomes.

Velocities are real-valued and clamped; a bit is set with probability
sigmoid(velocity). Leaders come from the bounded archive via a
crowding-biased binary tournament, so sparse regions steer the swarm.
The first iteration is the evaluated random initialization, giving exactly
population_size * iterations objective evaluations per run.
"""

from __future__ import annotations

import numpy as np

from .archive import ParetoArchive
from .common import OptimizerResult, _Stopwatch, member_rng
from .config import MopsoConfig, check_positive
from .operators import Chromosome, dominates, random_bits, repair_empty


def sigmoid(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x, dtype=np.float64)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def velocity_update(v, x, pbest, leader, inertia, cognitive, social, rng):
    r1 = rng.random(v.shape[0])
    r2 = rng.random(v.shape[0])
    x = x.astype(np.float64)
    return inertia * v + cognitive * r1 * (pbest - x) + social * r2 * (leader - x)


def sample_position(v: np.ndarray, rng) -> np.ndarray:
    return (rng.random(v.shape[0]) < sigmoid(v)).astype(np.uint8)


def _pick_leader(archive: ParetoArchive, rng) -> np.ndarray:
    crowd = archive.crowding()
    i = int(rng.integers(0, len(archive)))
    j = int(rng.integers(0, len(archive)))
    if crowd[i] != crowd[j]:
        winner = i if crowd[i] > crowd[j] else j
    else:
        winner = i if archive.members[i].key() <= archive.members[j].key() else j
    return archive.members[winner].bits.astype(np.float64)


def mopso(objective_fn, genome_length: int, config: MopsoConfig, seed: int,
          wall_clock: bool = False) -> OptimizerResult:
    check_positive(config, "population_size", "iterations", "archive_size")
    watch = _Stopwatch(wall_clock)
    pop = config.population_size
    evaluations = 0

    def evaluate(bits: np.ndarray) -> Chromosome:
        nonlocal evaluations
        evaluations += 1
        return Chromosome(bits, objective_fn(bits))

    archive = ParetoArchive(config.archive_size)
    positions: list[Chromosome] = []
    pbest: list[Chromosome] = []
    velocities = np.zeros((pop, genome_length))
    for i in range(pop):
        rng = member_rng(seed, 1, i)
        c = evaluate(repair_empty(random_bits(genome_length, rng), rng))
        positions.append(c)
        pbest.append(c)
        archive.offer(c)

    for it in range(2, config.iterations + 1):
        for i in range(pop):
            rng = member_rng(seed, it, i)
            leader = _pick_leader(archive, rng)
            v = velocity_update(
                velocities[i], positions[i].bits, pbest[i].bits.astype(np.float64),
                leader, config.inertia, config.cognitive, config.social, rng,
            )
            velocities[i] = np.clip(v, config.v_min, config.v_max)
            bits = repair_empty(sample_position(velocities[i], rng), rng)
            c = evaluate(bits)
            positions[i] = c
            if dominates(c.objectives, pbest[i].objectives):
                pbest[i] = c
            elif not dominates(pbest[i].objectives, c.objectives) and rng.random() < 0.5:
                pbest[i] = c
            archive.offer(c)

    return OptimizerResult("mopso", archive, evaluations, config.iterations, watch.elapsed())
