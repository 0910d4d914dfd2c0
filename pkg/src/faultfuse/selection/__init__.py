from .archive import ParetoArchive
from .common import OptimizerResult, member_rng
from .config import ModeConfig, MopsoConfig, Nsga2Config, SurrogateConfig, check_positive
from .mode import mode
from .mopso import mopso
from .nsga2 import nsga2
from .objectives import WrapperFitness
from .operators import (
    Chromosome,
    crowding_distance,
    dominates,
    fitness_scaled_mutation,
    mutation_probability,
    non_dominated_sort,
    random_bits,
    ranks_from_fronts,
    repair_empty,
    uniform_crossover,
)

OPTIMIZERS = {"nsga2": (nsga2, Nsga2Config), "mopso": (mopso, MopsoConfig), "mode": (mode, ModeConfig)}

__all__ = [
    "Chromosome",
    "ModeConfig",
    "MopsoConfig",
    "Nsga2Config",
    "OPTIMIZERS",
    "OptimizerResult",
    "ParetoArchive",
    "SurrogateConfig",
    "WrapperFitness",
    "check_positive",
    "crowding_distance",
    "dominates",
    "fitness_scaled_mutation",
    "member_rng",
    "mode",
    "mopso",
    "mutation_probability",
    "non_dominated_sort",
    "nsga2",
    "random_bits",
    "ranks_from_fronts",
    "repair_empty",
    "uniform_crossover",
]
