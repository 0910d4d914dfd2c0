"""Elitist non-dominated sorting genetic algorithm over binary feature genomes.

Per generation: crowded binary tournaments pick parents, uniform crossover
runs at the configured probability, mutation flips bits at a fitness-scaled
rate capped by the configured mutation probability, and parents plus
offspring compete in the environmental selection.
"""

from __future__ import annotations

import numpy as np

from .archive import ParetoArchive
from .common import OptimizerResult, _Stopwatch, member_rng
from .config import Nsga2Config, check_positive
from .operators import (
    Chromosome,
    crowding_distance,
    fitness_scaled_mutation,
    non_dominated_sort,
    random_bits,
    ranks_from_fronts,
    repair_empty,
    uniform_crossover,
)


def _population_metrics(pop: list[Chromosome]) -> tuple[np.ndarray, np.ndarray]:
    objs = np.array([c.objectives for c in pop])
    fronts = non_dominated_sort(objs)
    ranks = ranks_from_fronts(fronts, len(pop))
    crowd = np.empty(len(pop))
    for front in fronts:
        crowd[front] = crowding_distance(objs[front])
    return ranks, crowd


def _tournament(pop, ranks, crowd, rng) -> Chromosome:
    i = int(rng.integers(0, len(pop)))
    j = int(rng.integers(0, len(pop)))
    better = _crowded_less(i, j, ranks, crowd, pop)
    return pop[i] if better else pop[j]


def _crowded_less(i, j, ranks, crowd, pop) -> bool:
    """Crowded-comparison: rank, then crowding, then lexicographic genome."""
    if ranks[i] != ranks[j]:
        return ranks[i] < ranks[j]
    if crowd[i] != crowd[j]:
        return crowd[i] > crowd[j]
    return pop[i].key() <= pop[j].key()


def _environmental_selection(pool: list[Chromosome], size: int) -> list[Chromosome]:
    objs = np.array([c.objectives for c in pool])
    fronts = non_dominated_sort(objs)
    survivors: list[Chromosome] = []
    for front in fronts:
        if len(survivors) + len(front) <= size:
            survivors.extend(pool[i] for i in front)
            continue
        crowd = crowding_distance(objs[front])
        order = sorted(
            range(len(front)),
            key=lambda k: (-crowd[k], pool[front[k]].key()),
        )
        for k in order[: size - len(survivors)]:
            survivors.append(pool[front[k]])
        break
    return survivors


def nsga2(objective_fn, genome_length: int, config: Nsga2Config, seed: int,
          wall_clock: bool = False) -> OptimizerResult:
    check_positive(config, "population_size", "generations")
    watch = _Stopwatch(wall_clock)
    evaluations = 0

    def evaluate(bits: np.ndarray) -> Chromosome:
        nonlocal evaluations
        evaluations += 1
        return Chromosome(bits, objective_fn(bits))

    pop: list[Chromosome] = []
    for i in range(config.population_size):
        rng = member_rng(seed, 0, i)
        pop.append(evaluate(repair_empty(random_bits(genome_length, rng), rng)))

    for gen in range(1, config.generations + 1):
        ranks, crowd = _population_metrics(pop)
        # Eq-3 fitness scalar: negated non-domination rank (lower rank = fitter)
        fit = -ranks.astype(np.float64)
        f_max, f_min = float(fit.max()), float(fit.min())
        rank_of = {id(c): float(fit[i]) for i, c in enumerate(pop)}
        offspring: list[Chromosome] = []
        pair = 0
        while len(offspring) < config.population_size:
            rng = member_rng(seed, gen, pair)
            pair += 1
            p1 = _tournament(pop, ranks, crowd, rng)
            p2 = _tournament(pop, ranks, crowd, rng)
            if rng.random() < config.crossover_prob:
                c1, c2 = uniform_crossover(p1.bits, p2.bits, rng)
            else:
                c1, c2 = p1.bits.copy(), p2.bits.copy()
            for bits, parent in ((c1, p1), (c2, p2)):
                if len(offspring) >= config.population_size:
                    break
                mutated = fitness_scaled_mutation(
                    bits, rank_of[id(parent)], f_max, f_min, rng,
                    ceiling=config.mutation_prob,
                )
                offspring.append(evaluate(repair_empty(mutated, rng)))
        pop = _environmental_selection(pop + offspring, config.population_size)

    archive = ParetoArchive(config.archive_size)
    archive.extend(pop)
    return OptimizerResult("nsga2", archive, evaluations, config.generations, watch.elapsed())
