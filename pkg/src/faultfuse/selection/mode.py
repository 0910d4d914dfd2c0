"""Multi-objective differential evolution on relaxed real genomes.

DE/rand/1 mutates real vectors, binomial crossover builds the trial, and the
trial bitstring is sampled per locus as sigmoid(value) > r. Selection is by
Pareto dominance: a dominating trial replaces its target, a mutually
non-dominated trial is offered to the archive alongside the incumbent.
"""

from __future__ import annotations

import numpy as np

from .archive import ParetoArchive
from .common import OptimizerResult, _Stopwatch, member_rng
from .config import ModeConfig, check_positive
from .mopso import sigmoid
from .operators import Chromosome, dominates, repair_empty


def de_mutant(x_a: np.ndarray, x_b: np.ndarray, x_c: np.ndarray, scale: float) -> np.ndarray:
    return x_a + scale * (x_b - x_c)


def de_crossover(target: np.ndarray, mutant: np.ndarray, cr: float, j_rand: int, rng) -> np.ndarray:
    cross = rng.random(target.shape[0]) < cr
    cross[j_rand] = True
    return np.where(cross, mutant, target)


def binarize(real: np.ndarray, rng) -> np.ndarray:
    return (sigmoid(real) > rng.random(real.shape[0])).astype(np.uint8)


def mode(objective_fn, genome_length: int, config: ModeConfig, seed: int,
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
    reals = np.empty((pop, genome_length))
    members: list[Chromosome] = []
    for i in range(pop):
        rng = member_rng(seed, 0, i)
        reals[i] = rng.uniform(-1.0, 1.0, genome_length)
        bits = repair_empty(binarize(reals[i], rng), rng)
        c = evaluate(bits)
        members.append(c)
        archive.offer(c)

    for gen in range(1, config.iterations + 1):
        for i in range(pop):
            rng = member_rng(seed, gen, i)
            choices = [k for k in range(pop) if k != i]
            a, b, c_idx = rng.choice(len(choices), size=3, replace=False)
            mutant = de_mutant(reals[choices[a]], reals[choices[b]], reals[choices[c_idx]],
                               config.scale_factor)
            j_rand = int(rng.integers(0, genome_length))
            trial_real = de_crossover(reals[i], mutant, config.crossover_rate, j_rand, rng)
            trial_bits = repair_empty(binarize(trial_real, rng), rng)
            trial = evaluate(trial_bits)
            if dominates(trial.objectives, members[i].objectives):
                reals[i] = trial_real
                members[i] = trial
            archive.offer(trial)

    return OptimizerResult("mode", archive, evaluations, config.iterations, watch.elapsed())
