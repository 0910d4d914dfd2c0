"""Optimizer parameter sets with published defaults."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ConfigError


@dataclass
class SurrogateConfig:
    epochs: int = 20
    learning_rate: float = 0.5
    folds: int = 10


@dataclass
class Nsga2Config:
    population_size: int = 100
    generations: int = 200
    crossover_prob: float = 0.6
    mutation_prob: float = 0.1
    # distribution indices describe SBX/polynomial operators; the binary
    # operators used here ignore them, they are kept for config fidelity
    crossover_distribution_index: float = 1.0
    mutation_distribution_index: float = 1.0
    archive_size: int = 100


@dataclass
class MopsoConfig:
    population_size: int = 100
    iterations: int = 100
    archive_size: int = 100
    cognitive: float = 1.5
    social: float = 2.0
    v_max: float = 1.0
    v_min: float = -1.0
    inertia: float = 0.4


@dataclass
class ModeConfig:
    population_size: int = 100
    iterations: int = 100
    crossover_rate: float = 0.5
    scale_factor: float = 0.2
    archive_size: int = 100


def check_positive(cfg, *names: str) -> None:
    for name in names:
        value = getattr(cfg, name)
        if value <= 0:
            raise ConfigError(f"{type(cfg).__name__}.{name} must be positive, got {value}")
